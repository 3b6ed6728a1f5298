/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef CATDUAL_GUARD_HOMOMORPHISM_HH
#define CATDUAL_GUARD_HOMOMORPHISM_HH 1

#include <catdual/structure.hh>

#include <cstdint>
#include <optional>
#include <vector>

namespace catdual
{
    /// mapping[a] is the image of source element a.
    struct HomWitness
    {
        std::vector<int> mapping;
    };

    /// Backtracking search with generalised arc consistency over the source
    /// tuples. Complete: returns nullopt only when no homomorphism exists.
    /// Throws SignatureMismatch unless both structures share a signature.
    auto find_homomorphism(const Structure & source, const Structure & target) -> std::optional<HomWitness>;

    auto is_homomorphism(const Structure & source, const Structure & target, const HomWitness & h) -> bool;

    auto compose(const HomWitness & first, const HomWitness & second) -> HomWitness;

    /// Brute force over bijections, pruned by per-element occurrence
    /// profiles. Meant for universes of up to about fifteen elements.
    auto is_isomorphic(const Structure & a, const Structure & b) -> bool;

    inline constexpr int default_core_bound = 8;

    /// A minimum-size induced substructure that the whole structure retracts
    /// to. Throws GuardExceeded if the universe is larger than bound.
    auto core(const Structure & s, int bound = default_core_bound) -> Structure;

    inline constexpr std::uint64_t default_enumeration_guard = std::uint64_t(1) << 20;

    /// Every structure over a signature on the labelled universe {1..n}.
    /// Structure k switches on tuple t (in canonical relation-then-lexicographic
    /// order) iff bit (bits - 1 - t) of k is set, so iterating k upwards is
    /// lexicographic order over the inclusion bit vectors.
    class StructureEnumerator
    {
        private:
            Signature _signature;
            int _size;
            std::vector<std::pair<int, Tuple>> _candidates;

        public:
            /// Throws GuardExceeded if the count would exceed guard.
            StructureEnumerator(Signature signature, int size, std::uint64_t guard = default_enumeration_guard);

            auto count() const -> std::uint64_t { return std::uint64_t(1) << _candidates.size(); }
            auto at(std::uint64_t index) const -> Structure;

            template <typename Callback_>
            auto for_each(Callback_ && callback) const -> void
            {
                for (std::uint64_t k = 0 ; k < count() ; ++k)
                    callback(at(k));
            }
    };

    auto enumerate_structures(const Signature & sig, int n, std::uint64_t guard = default_enumeration_guard) -> std::vector<Structure>;
}

#endif
