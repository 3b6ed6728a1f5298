/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef CATDUAL_GUARD_STRUCTURE_HH
#define CATDUAL_GUARD_STRUCTURE_HH 1

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace catdual
{
    struct Relation
    {
        std::string name;
        int arity;

        auto operator== (const Relation &) const -> bool = default;
    };

    /// An ordered list of relation symbols. The order is the canonical
    /// iteration order for everything built on top of it.
    class Signature
    {
        private:
            std::vector<Relation> _relations;

        public:
            Signature() = default;
            explicit Signature(std::vector<Relation> relations);

            auto relations() const -> const std::vector<Relation> & { return _relations; }
            auto size() const -> int { return int(_relations.size()); }
            auto operator[] (int r) const -> const Relation & { return _relations[r]; }
            auto arity(int r) const -> int { return _relations[r].arity; }

            auto find(std::string_view name) const -> std::optional<int>;

            auto operator== (const Signature &) const -> bool = default;
    };

    using Tuple = std::vector<int>;

    /// A finite relational structure. Elements are opaque string names with
    /// dense integer ids in insertion order; tuples are stored as element ids.
    class Structure
    {
        private:
            Signature _signature;
            std::string _name = "A";
            std::vector<std::string> _elements;
            std::map<std::string, int, std::less<>> _element_index;
            std::vector<std::vector<Tuple>> _tuples;
            std::vector<std::set<Tuple>> _tuple_sets;

        public:
            Structure() = default;
            explicit Structure(Signature signature);

            auto signature() const -> const Signature & { return _signature; }

            auto name() const -> const std::string & { return _name; }
            auto set_name(std::string name) -> void { _name = std::move(name); }

            auto size() const -> int { return int(_elements.size()); }
            auto elements() const -> const std::vector<std::string> & { return _elements; }
            auto element_name(int e) const -> const std::string & { return _elements[e]; }
            auto find_element(std::string_view name) const -> std::optional<int>;

            /// Throws ValidationError on a duplicate name.
            auto add_element(std::string name) -> int;

            /// Returns false if the tuple was already present. Throws
            /// ValidationError on arity mismatch or an out-of-range element.
            auto add_tuple(int relation, Tuple tuple) -> bool;

            auto tuples(int relation) const -> const std::vector<Tuple> & { return _tuples[relation]; }
            auto contains(int relation, const Tuple & tuple) const -> bool;
            auto tuple_count() const -> long;

            auto same_as(const Structure & other) const -> bool;
    };

    /// The substructure induced by the given element ids, in the given order.
    auto induced_substructure(const Structure & s, const std::vector<int> & keep) -> Structure;

    struct Block
    {
        int relation;
        Tuple tuple;

        auto operator<=> (const Block &) const = default;
    };

    struct IncidenceEdge
    {
        int element;
        int position;
        int block;

        auto operator<=> (const IncidenceEdge &) const = default;
    };

    /// The bipartite incidence multigraph. Edge (a, i, B) exists whenever the
    /// i-th entry of B's tuple is a, so repeated entries give parallel edges.
    struct IncidenceGraph
    {
        int element_count = 0;
        std::vector<Block> blocks;
        std::vector<IncidenceEdge> edges;

        auto element_degrees() const -> std::vector<int>;
        auto block_degrees() const -> std::vector<int>;
    };

    auto incidence_graph(const Structure & s) -> IncidenceGraph;

    struct Classification
    {
        std::vector<int> leaves;
        std::vector<int> non_leaves;
        std::vector<int> pendant_blocks;
        std::vector<int> non_pendant_blocks;
    };

    /// Block indices refer to incidence_graph(s).blocks.
    auto classify(const Structure & s) -> Classification;

    auto is_tree(const Structure & s) -> bool;
    auto is_path(const Structure & s) -> bool;
    auto is_caterpillar(const Structure & s) -> bool;

    auto format_block(const Structure & s, const Block & b) -> std::string;
}

#endif
