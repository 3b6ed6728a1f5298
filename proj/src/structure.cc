/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <catdual/structure.hh>
#include <catdual/error.hh>

#include <algorithm>
#include <numeric>

using namespace catdual;

using std::optional;
using std::string;
using std::string_view;
using std::to_string;
using std::vector;

Signature::Signature(vector<Relation> relations) :
    _relations(std::move(relations))
{
    for (size_t r = 0 ; r < _relations.size() ; ++r) {
        if (_relations[r].arity < 1)
            throw ValidationError("relation " + _relations[r].name + " has arity " + to_string(_relations[r].arity));
        for (size_t s = 0 ; s < r ; ++s)
            if (_relations[s].name == _relations[r].name)
                throw ValidationError("relation " + _relations[r].name + " declared twice");
    }
}

auto Signature::find(string_view name) const -> optional<int>
{
    for (size_t r = 0 ; r < _relations.size() ; ++r)
        if (_relations[r].name == name)
            return int(r);
    return std::nullopt;
}

Structure::Structure(Signature signature) :
    _signature(std::move(signature)),
    _tuples(_signature.size()),
    _tuple_sets(_signature.size())
{
}

auto Structure::find_element(string_view name) const -> optional<int>
{
    auto it = _element_index.find(name);
    if (it == _element_index.end())
        return std::nullopt;
    return it->second;
}

auto Structure::add_element(string name) -> int
{
    if (! _element_index.emplace(name, int(_elements.size())).second)
        throw ValidationError("duplicate element " + name);
    _elements.push_back(std::move(name));
    return int(_elements.size()) - 1;
}

auto Structure::add_tuple(int relation, Tuple tuple) -> bool
{
    if (relation < 0 || relation >= _signature.size())
        throw ValidationError("relation index out of range");
    if (int(tuple.size()) != _signature.arity(relation))
        throw ValidationError("relation " + _signature[relation].name + " has arity "
                + to_string(_signature.arity(relation)) + " but tuple has " + to_string(tuple.size()) + " entries");
    for (auto e : tuple)
        if (e < 0 || e >= size())
            throw ValidationError("tuple entry is not an element of the universe");

    if (! _tuple_sets[relation].insert(tuple).second)
        return false;
    _tuples[relation].push_back(std::move(tuple));
    return true;
}

auto Structure::contains(int relation, const Tuple & tuple) const -> bool
{
    return _tuple_sets[relation].count(tuple);
}

auto Structure::tuple_count() const -> long
{
    long result = 0;
    for (auto & t : _tuples)
        result += long(t.size());
    return result;
}

auto Structure::same_as(const Structure & other) const -> bool
{
    return _signature == other._signature && _elements == other._elements && _tuple_sets == other._tuple_sets;
}

auto catdual::induced_substructure(const Structure & s, const vector<int> & keep) -> Structure
{
    Structure result{ s.signature() };
    result.set_name(s.name());
    vector<int> remap(s.size(), -1);
    for (auto e : keep)
        remap[e] = result.add_element(s.element_name(e));

    for (int r = 0 ; r < s.signature().size() ; ++r)
        for (auto & t : s.tuples(r)) {
            Tuple image;
            for (auto e : t) {
                if (remap[e] == -1)
                    break;
                image.push_back(remap[e]);
            }
            if (image.size() == t.size())
                result.add_tuple(r, std::move(image));
        }

    return result;
}

auto IncidenceGraph::element_degrees() const -> vector<int>
{
    vector<int> result(element_count, 0);
    for (auto & e : edges)
        ++result[e.element];
    return result;
}

auto IncidenceGraph::block_degrees() const -> vector<int>
{
    vector<int> result(blocks.size(), 0);
    for (auto & e : edges)
        ++result[e.block];
    return result;
}

auto catdual::incidence_graph(const Structure & s) -> IncidenceGraph
{
    IncidenceGraph result;
    result.element_count = s.size();
    for (int r = 0 ; r < s.signature().size() ; ++r)
        for (auto & t : s.tuples(r)) {
            int b = int(result.blocks.size());
            result.blocks.push_back(Block{ r, t });
            for (int i = 0 ; i < int(t.size()) ; ++i)
                result.edges.push_back(IncidenceEdge{ t[i], i, b });
        }
    return result;
}

namespace
{
    struct UnionFind
    {
        vector<int> parent;

        explicit UnionFind(int n) : parent(n)
        {
            std::iota(parent.begin(), parent.end(), 0);
        }

        auto find(int x) -> int
        {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        }

        auto unite(int a, int b) -> bool
        {
            a = find(a);
            b = find(b);
            if (a == b)
                return false;
            parent[b] = a;
            return true;
        }
    };

    auto classify_with(const IncidenceGraph & g) -> Classification
    {
        Classification result;
        auto degrees = g.element_degrees();
        for (int e = 0 ; e < g.element_count ; ++e)
            (degrees[e] == 1 ? result.leaves : result.non_leaves).push_back(e);

        for (int b = 0 ; b < int(g.blocks.size()) ; ++b) {
            vector<int> touched;
            for (auto e : g.blocks[b].tuple)
                if (degrees[e] != 1 && std::find(touched.begin(), touched.end(), e) == touched.end())
                    touched.push_back(e);
            (touched.size() <= 1 ? result.pendant_blocks : result.non_pendant_blocks).push_back(b);
        }
        return result;
    }

    auto tree_shaped(const IncidenceGraph & g) -> bool
    {
        int nodes = g.element_count + int(g.blocks.size());
        if (int(g.edges.size()) != nodes - 1)
            return false;

        // nodes - 1 edges and no cycle means connected
        UnionFind uf(nodes);
        for (auto & e : g.edges)
            if (! uf.unite(e.element, g.element_count + e.block))
                return false;
        return true;
    }
}

auto catdual::classify(const Structure & s) -> Classification
{
    return classify_with(incidence_graph(s));
}

auto catdual::is_tree(const Structure & s) -> bool
{
    return tree_shaped(incidence_graph(s));
}

auto catdual::is_path(const Structure & s) -> bool
{
    auto g = incidence_graph(s);
    return tree_shaped(g) && classify_with(g).pendant_blocks.size() <= 2;
}

auto catdual::is_caterpillar(const Structure & s) -> bool
{
    auto g = incidence_graph(s);
    if (! tree_shaped(g))
        return false;

    auto c = classify_with(g);
    if (c.pendant_blocks.size() <= 2)
        return true;

    // What remains after deleting pendant blocks and their leaves is the
    // subforest on non-leaves and non-pendant blocks. Being a subgraph of a
    // tree it is acyclic; it is a path iff connected with max degree two.
    vector<char> spine_element(g.element_count, 0), spine_block(g.blocks.size(), 0);
    for (auto e : c.non_leaves)
        spine_element[e] = 1;
    for (auto b : c.non_pendant_blocks)
        spine_block[b] = 1;

    vector<int> degree(g.element_count + g.blocks.size(), 0);
    int spine_edges = 0;
    for (auto & e : g.edges)
        if (spine_element[e.element] && spine_block[e.block]) {
            ++spine_edges;
            if (++degree[e.element] > 2 || ++degree[g.element_count + e.block] > 2)
                return false;
        }

    int spine_nodes = int(c.non_leaves.size() + c.non_pendant_blocks.size());
    return spine_nodes == 0 || spine_edges == spine_nodes - 1;
}

auto catdual::format_block(const Structure & s, const Block & b) -> string
{
    string result = s.signature()[b.relation].name + "(";
    for (size_t i = 0 ; i < b.tuple.size() ; ++i) {
        if (i != 0)
            result += ",";
        result += s.element_name(b.tuple[i]);
    }
    return result + ")";
}
