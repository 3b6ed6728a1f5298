/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef CATDUAL_GUARD_DUALITY_HH
#define CATDUAL_GUARD_DUALITY_HH 1

#include <catdual/automata.hh>
#include <catdual/homomorphism.hh>
#include <catdual/structure.hh>

#include <cstdint>
#include <optional>

namespace catdual
{
    inline constexpr std::uint64_t default_subset_guard = std::uint64_t(1) << 20;

    struct DualResult
    {
        Structure dual;
        Dfa source;
        Signature signature;
    };

    /// The powerset dual of a complete DFA over sigma2_alphabet(sig).
    /// Elements are the state sets containing the start state and no
    /// terminal state, named like {q0,q3}. (X1, ..., Xk) is in R exactly when
    /// every transition on R[i,j] from a state of Xi lands in Xj.
    ///
    /// Throws EmptyDual when the start state is terminal, and GuardExceeded
    /// when 2^states exceeds subset_guard.
    auto gamma(const Dfa & dfa, const Signature & sig, std::uint64_t subset_guard = default_subset_guard) -> DualResult;

    struct DualityLimits
    {
        int max_states = default_max_dfa_states;
        std::uint64_t max_subsets = default_subset_guard;
    };

    /// gamma(determinize(language)).
    auto dualize(const Nfa & language, const Signature & sig, const DualityLimits & limits = {}) -> DualResult;

    /// Complement of the determinized structure automaton: accepts the words
    /// of caterpillars that do not map to s.
    auto obstruction_dfa(const Structure & s, const DualityLimits & limits = {}) -> Dfa;

    auto c_of(const Structure & s, const DualityLimits & limits = {}) -> Structure;

    struct DualityCheck
    {
        bool holds;
        Structure c;
        std::optional<HomWitness> witness;
    };

    auto has_caterpillar_duality(const Structure & s, const DualityLimits & limits = {}) -> DualityCheck;

    /// Two states: live (accepting) and a sink entered on any diagonal letter
    /// of a relation of arity at least two.
    auto path_language(const Signature & sig) -> Dfa;

    auto c_path_of(const Structure & s, const DualityLimits & limits = {}) -> Structure;
    auto has_path_duality(const Structure & s, const DualityLimits & limits = {}) -> DualityCheck;

    enum class Mismatch
    {
        /// candidate maps to the dual, yet an obstruction maps to candidate
        MapsButObstructed,
        /// no obstruction maps to candidate, yet it does not map to the dual
        UnobstructedButNoMap
    };

    struct DualityVerdict
    {
        bool holds;
        std::uint64_t checked = 0;
        std::optional<Structure> counterexample;
        std::optional<Mismatch> mismatch;
        std::optional<Word> obstruction;
        std::optional<HomWitness> map_to_dual;
    };

    /// For every labelled structure on 1..max_size elements, compares
    /// "maps to dual" with "no word of language describes a caterpillar
    /// that maps to it". Candidates may be checked on several threads; the
    /// reported counterexample is always the first in enumeration order.
    auto verify_duality(const Nfa & language, const Signature & sig, const Structure & dual, int max_size,
            int jobs = 1, std::uint64_t enumeration_guard = default_enumeration_guard) -> DualityVerdict;
}

#endif
