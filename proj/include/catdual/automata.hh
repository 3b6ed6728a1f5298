/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef CATDUAL_GUARD_AUTOMATA_HH
#define CATDUAL_GUARD_AUTOMATA_HH 1

#include <catdual/structure.hh>
#include <catdual/words.hh>

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace catdual
{
    inline constexpr int epsilon = -1;

    /// A nondeterministic automaton over sigma2_alphabet(signature). Labels
    /// are letter indices, or epsilon.
    struct Nfa
    {
        struct Transition
        {
            int from;
            int label;
            int to;

            auto operator<=> (const Transition &) const = default;
        };

        Signature signature;
        std::vector<std::string> state_names;
        std::vector<int> initials;
        std::vector<int> terminals;
        std::vector<Transition> transitions;

        Nfa() = default;
        explicit Nfa(Signature sig);

        auto letter_count() const -> int;
        auto state_count() const -> int { return int(state_names.size()); }
        auto add_state(std::string name) -> int;
        auto add_transition(int from, int label, int to) -> void;

        /// Sorts and deduplicates the state sets and transitions, and checks
        /// every endpoint and label. Throws ValidationError.
        auto normalise() -> void;

        /// Accepts nothing: one initial state, no terminals.
        static auto empty_language(const Signature & sig) -> Nfa;
    };

    /// A complete deterministic automaton. delta[state * letters + letter].
    /// When built by determinize, members[state] lists the source NFA states.
    struct Dfa
    {
        Signature signature;
        std::vector<std::string> state_names;
        std::vector<std::vector<int>> members;
        int start = 0;
        std::vector<char> terminal;
        std::vector<int> delta;

        auto letter_count() const -> int;
        auto state_count() const -> int { return int(state_names.size()); }
        auto next(int state, int letter) const -> int { return delta[std::size_t(state) * letter_count() + letter]; }

        /// Every (state, letter) has exactly one in-range successor.
        auto is_total() const -> bool;
    };

    /// Letters NAME[i,j], union |, star *, grouping ( ), juxtaposition for
    /// concatenation, and EPS for the empty word. Thompson construction.
    auto regex_to_nfa(std::string_view pattern, const Signature & sig) -> Nfa;

    inline constexpr int default_max_dfa_states = 1 << 16;

    /// Reachable-subset construction with epsilon closure. The empty subset
    /// is the sink. Throws GuardExceeded past max_states.
    auto determinize(const Nfa & nfa, int max_states = default_max_dfa_states) -> Dfa;

    auto complement_dfa(const Dfa & dfa) -> Dfa;

    auto dfa_to_nfa(const Dfa & dfa) -> Nfa;

    /// Reachable product; epsilon moves of either side advance that side only.
    /// Throws SignatureMismatch unless both share an alphabet.
    auto intersect(const Nfa & a, const Nfa & b) -> Nfa;

    struct EmptinessResult
    {
        bool empty;
        std::optional<Word> witness;
    };

    /// Breadth-first search; when nonempty the witness is the least accepted
    /// word in length-then-canonical-letter order.
    auto is_empty(const Nfa & nfa) -> EmptinessResult;

    /// States are the elements; transitions are the pairs of beta(s); every
    /// state is initial and terminal.
    auto structure_to_nfa(const Structure & s) -> Nfa;

    auto accepts(const Nfa & nfa, const Word & w) -> bool;
    auto accepts(const Dfa & dfa, const Word & w) -> bool;

    /// Accepted words of length at most max_length, shortest first, then in
    /// canonical letter order. Returning false from the callback stops early.
    auto for_each_accepted(const Nfa & nfa, int max_length, const std::function<bool (const Word &)> & callback) -> void;
    auto enumerate_accepted(const Nfa & nfa, int max_length) -> std::vector<Word>;
    auto enumerate_accepted(const Dfa & dfa, int max_length) -> std::vector<Word>;

    /// Text format:
    ///
    ///     nfa
    ///     alphabet-signature E/2
    ///     states q0 q1
    ///     initial q0
    ///     terminal q1
    ///     trans q0 E[1,2] q1
    ///     etrans q1 q0
    auto parse_nfa(std::string_view text) -> Nfa;
    auto write_nfa(const Nfa & nfa) -> std::string;
    auto nfa_to_json(const Nfa & nfa) -> nlohmann::json;
    auto write_dfa(const Dfa & dfa) -> std::string;
}

#endif
