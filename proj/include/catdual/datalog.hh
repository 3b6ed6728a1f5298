/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef CATDUAL_GUARD_DATALOG_HH
#define CATDUAL_GUARD_DATALOG_HH 1

#include <catdual/automata.hh>
#include <catdual/structure.hh>
#include <catdual/words.hh>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace catdual
{
    /// head(a) :- body(b), R(x1, ..., xk) with x_head_position = a and
    /// x_body_position = b. Positions are 1-based.
    struct DatalogRule
    {
        int head;
        int body;
        int relation;
        int head_position;
        int body_position;
    };

    /// A monadic linear program with at most one EDB atom per rule.
    struct DatalogProgram
    {
        Signature signature;
        std::vector<std::string> idbs;
        int init;
        std::vector<DatalogRule> rules;
        std::vector<int> goals;

        auto find_idb(std::string_view name) const -> std::optional<int>;
    };

    /// Grammar, one rule per `.`, `%` starts a comment:
    ///
    ///     r1(X).
    ///     r2(Y) :- r1(X), E(X,Y).
    ///     goal :- r2(Y).
    ///
    /// Relation symbols come from sig; any other predicate is an IDB.
    /// Throws ParseError or ValidationError.
    auto parse_program(std::string_view text, const Signature & sig) -> DatalogProgram;

    auto format_program(const DatalogProgram & p) -> std::string;

    /// States are IDBs, rule (head, body, R, m, n) gives body -R[n,m]-> head,
    /// the init IDB is initial and the goal IDBs are terminal.
    auto program_to_nfa(const DatalogProgram & p) -> Nfa;

    enum class Evaluation
    {
        SemiNaive,
        Naive
    };

    struct EvaluationResult
    {
        bool goal;
        std::vector<std::vector<int>> fixpoint;   // per IDB, sorted element ids
        std::optional<Word> derivation;
    };

    /// Runs the program on s to its least fixpoint. When the goal is reached,
    /// derivation spells the letters of one shortest goal-reaching chain of
    /// rule applications. Throws SignatureMismatch if s lacks a relation.
    auto evaluate(const DatalogProgram & p, const Structure & s, Evaluation how = Evaluation::SemiNaive) -> EvaluationResult;
}

#endif
