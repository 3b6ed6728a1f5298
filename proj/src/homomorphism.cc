/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <catdual/homomorphism.hh>
#include <catdual/error.hh>

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

using namespace catdual;

using std::optional;
using std::pair;
using std::string;
using std::to_string;
using std::uint64_t;
using std::vector;

namespace
{
    using Domain = boost::dynamic_bitset<>;

    struct Constraint
    {
        int relation;
        Tuple vars;
        vector<int> distinct;        // distinct variables, first-occurrence order
        vector<int> local;           // position -> index into distinct
        vector<int> first_position;  // index into distinct -> first position
    };

    class Solver
    {
        private:
            const Structure & _source;
            const Structure & _target;
            vector<Constraint> _constraints;
            vector<vector<int>> _constraints_of;
            vector<int> _order;

            auto revise(const Constraint & c, vector<Domain> & domains, vector<int> & changed) const -> bool
            {
                vector<Domain> support(c.distinct.size(), Domain(_target.size()));
                for (auto & s : _target.tuples(c.relation)) {
                    bool ok = true;
                    for (size_t q = 0 ; q < s.size() && ok ; ++q)
                        ok = domains[c.vars[q]].test(s[q]) && s[q] == s[c.first_position[c.local[q]]];
                    if (! ok)
                        continue;
                    for (size_t l = 0 ; l < c.distinct.size() ; ++l)
                        support[l].set(s[c.first_position[l]]);
                }

                for (size_t l = 0 ; l < c.distinct.size() ; ++l) {
                    auto & d = domains[c.distinct[l]];
                    auto reduced = d & support[l];
                    if (reduced != d) {
                        d = std::move(reduced);
                        if (d.none())
                            return false;
                        changed.push_back(c.distinct[l]);
                    }
                }
                return true;
            }

            auto propagate(vector<Domain> & domains, vector<int> queue) const -> bool
            {
                vector<char> queued(_constraints.size(), 0);
                for (auto c : queue)
                    queued[c] = 1;

                for (size_t head = 0 ; head < queue.size() ; ++head) {
                    auto c = queue[head];
                    queued[c] = 0;
                    vector<int> changed;
                    if (! revise(_constraints[c], domains, changed))
                        return false;
                    for (auto v : changed)
                        for (auto d : _constraints_of[v])
                            if (! queued[d]) {
                                queued[d] = 1;
                                queue.push_back(d);
                            }
                }
                return true;
            }

            auto search(vector<Domain> & domains) const -> bool
            {
                auto branch = std::find_if(_order.begin(), _order.end(), [&] (int v) { return domains[v].count() > 1; });
                if (branch == _order.end())
                    return true;

                auto var = *branch;
                auto values = domains[var];
                for (auto value = values.find_first() ; value != Domain::npos ; value = values.find_next(value)) {
                    auto attempt = domains;
                    attempt[var].reset();
                    attempt[var].set(value);
                    if (propagate(attempt, _constraints_of[var]) && search(attempt)) {
                        domains = std::move(attempt);
                        return true;
                    }
                }
                return false;
            }

        public:
            Solver(const Structure & source, const Structure & target) :
                _source(source),
                _target(target),
                _constraints_of(source.size())
            {
                vector<int> degree(source.size(), 0);
                for (int r = 0 ; r < source.signature().size() ; ++r)
                    for (auto & t : source.tuples(r)) {
                        Constraint c{ r, t, {}, {}, {} };
                        for (size_t q = 0 ; q < t.size() ; ++q) {
                            ++degree[t[q]];
                            auto it = std::find(c.distinct.begin(), c.distinct.end(), t[q]);
                            if (it == c.distinct.end()) {
                                c.local.push_back(int(c.distinct.size()));
                                c.distinct.push_back(t[q]);
                                c.first_position.push_back(int(q));
                            }
                            else
                                c.local.push_back(int(it - c.distinct.begin()));
                        }
                        for (auto v : c.distinct)
                            _constraints_of[v].push_back(int(_constraints.size()));
                        _constraints.push_back(std::move(c));
                    }

                _order.resize(source.size());
                std::iota(_order.begin(), _order.end(), 0);
                std::stable_sort(_order.begin(), _order.end(), [&] (int a, int b) { return degree[a] > degree[b]; });
            }

            auto solve() const -> optional<HomWitness>
            {
                vector<Domain> domains(_source.size(), Domain(_target.size()));
                for (auto & d : domains)
                    d.set();

                vector<int> all(_constraints.size());
                std::iota(all.begin(), all.end(), 0);
                if (! propagate(domains, all) || ! search(domains))
                    return std::nullopt;

                HomWitness result;
                for (auto & d : domains)
                    result.mapping.push_back(int(d.find_first()));
                return result;
            }
    };

    auto profile_of(const Structure & s) -> vector<vector<int>>
    {
        int columns = 0;
        vector<int> offset;
        for (auto & r : s.signature().relations()) {
            offset.push_back(columns);
            columns += r.arity;
        }
        vector<vector<int>> result(s.size(), vector<int>(columns, 0));
        for (int r = 0 ; r < s.signature().size() ; ++r)
            for (auto & t : s.tuples(r))
                for (size_t q = 0 ; q < t.size() ; ++q)
                    ++result[t[q]][offset[r] + q];
        return result;
    }

    struct IsoSearch
    {
        const Structure & a;
        const Structure & b;
        vector<vector<int>> profile_a, profile_b;
        vector<int> order;                                 // a's elements in assignment order
        vector<vector<pair<int, const Tuple *>>> check_at;  // tuples completed at each depth
        vector<int> image;
        vector<char> used;

        auto run(size_t depth) -> bool
        {
            if (depth == order.size())
                return true;

            auto x = order[depth];
            for (int y = 0 ; y < b.size() ; ++y) {
                if (used[y] || profile_a[x] != profile_b[y])
                    continue;
                image[x] = y;
                bool ok = true;
                for (auto & [r, t] : check_at[depth]) {
                    Tuple mapped;
                    for (auto e : *t)
                        mapped.push_back(image[e]);
                    if (! b.contains(r, mapped)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    used[y] = 1;
                    if (run(depth + 1))
                        return true;
                    used[y] = 0;
                }
            }
            image[x] = -1;
            return false;
        }
    };
}

auto catdual::find_homomorphism(const Structure & source, const Structure & target) -> optional<HomWitness>
{
    if (! (source.signature() == target.signature()))
        throw SignatureMismatch("homomorphism between structures of different signatures");
    if (target.size() == 0)
        return source.size() == 0 ? optional<HomWitness>{ HomWitness{} } : std::nullopt;
    return Solver{ source, target }.solve();
}

auto catdual::is_homomorphism(const Structure & source, const Structure & target, const HomWitness & h) -> bool
{
    if (! (source.signature() == target.signature()) || int(h.mapping.size()) != source.size())
        return false;
    for (auto v : h.mapping)
        if (v < 0 || v >= target.size())
            return false;
    for (int r = 0 ; r < source.signature().size() ; ++r)
        for (auto & t : source.tuples(r)) {
            Tuple image;
            for (auto e : t)
                image.push_back(h.mapping[e]);
            if (! target.contains(r, image))
                return false;
        }
    return true;
}

auto catdual::compose(const HomWitness & first, const HomWitness & second) -> HomWitness
{
    HomWitness result;
    for (auto v : first.mapping)
        result.mapping.push_back(second.mapping[v]);
    return result;
}

auto catdual::is_isomorphic(const Structure & a, const Structure & b) -> bool
{
    if (! (a.signature() == b.signature()) || a.size() != b.size())
        return false;
    for (int r = 0 ; r < a.signature().size() ; ++r)
        if (a.tuples(r).size() != b.tuples(r).size())
            return false;

    IsoSearch search{ a, b, profile_of(a), profile_of(b), {}, {}, vector<int>(a.size(), -1), vector<char>(b.size(), 0) };

    auto sorted_a = search.profile_a, sorted_b = search.profile_b;
    std::sort(sorted_a.begin(), sorted_a.end());
    std::sort(sorted_b.begin(), sorted_b.end());
    if (sorted_a != sorted_b)
        return false;

    // Grow the assignment order along tuples so that tuple checks fire early.
    vector<char> placed(a.size(), 0);
    auto place = [&] (int e) {
        if (! placed[e]) {
            placed[e] = 1;
            search.order.push_back(e);
        }
    };
    for (int start = 0 ; start < a.size() ; ++start) {
        if (placed[start])
            continue;
        size_t head = search.order.size();
        place(start);
        for ( ; head < search.order.size() ; ++head) {
            auto x = search.order[head];
            for (int r = 0 ; r < a.signature().size() ; ++r)
                for (auto & t : a.tuples(r))
                    if (std::find(t.begin(), t.end(), x) != t.end())
                        for (auto e : t)
                            place(e);
        }
    }

    vector<int> depth_of(a.size());
    for (size_t d = 0 ; d < search.order.size() ; ++d)
        depth_of[search.order[d]] = int(d);
    search.check_at.resize(a.size());
    for (int r = 0 ; r < a.signature().size() ; ++r)
        for (auto & t : a.tuples(r)) {
            int last = 0;
            for (auto e : t)
                last = std::max(last, depth_of[e]);
            search.check_at[last].emplace_back(r, &t);
        }

    // A bijective homomorphism between structures with equal tuple counts
    // maps every relation onto its counterpart, so the inverse is one too.
    return search.run(0);
}

auto catdual::core(const Structure & s, int bound) -> Structure
{
    if (s.size() > bound)
        throw GuardExceeded("core computation limited to " + to_string(bound) + " elements, structure has "
                + to_string(s.size()));

    int n = s.size();
    for (int k = 1 ; k < n ; ++k) {
        vector<char> pick(n, 0);
        std::fill(pick.begin(), pick.begin() + k, 1);
        do {
            vector<int> keep;
            for (int e = 0 ; e < n ; ++e)
                if (pick[e])
                    keep.push_back(e);
            auto candidate = induced_substructure(s, keep);
            if (find_homomorphism(s, candidate))
                return candidate;
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return s;
}

StructureEnumerator::StructureEnumerator(Signature signature, int size, uint64_t guard) :
    _signature(std::move(signature)),
    _size(size)
{
    if (size < 1)
        throw ValidationError("enumeration needs a positive universe size");

    long double total_bits = 0;
    for (auto & r : _signature.relations())
        total_bits += std::pow((long double)(size), r.arity);
    if (total_bits >= 63 || (uint64_t(1) << uint64_t(total_bits)) > guard)
        throw GuardExceeded("enumerating structures of size " + to_string(size) + " needs 2^"
                + to_string((long long)(total_bits)) + " candidates, above the guard of " + to_string(guard));

    for (int r = 0 ; r < _signature.size() ; ++r) {
        Tuple t(_signature.arity(r), 0);
        while (true) {
            _candidates.emplace_back(r, t);
            int q = int(t.size()) - 1;
            while (q >= 0 && t[q] == size - 1)
                t[q--] = 0;
            if (q < 0)
                break;
            ++t[q];
        }
    }
}

auto StructureEnumerator::at(uint64_t index) const -> Structure
{
    Structure result{ _signature };
    for (int e = 1 ; e <= _size ; ++e)
        result.add_element(to_string(e));
    auto bits = _candidates.size();
    for (size_t c = 0 ; c < bits ; ++c)
        if ((index >> (bits - 1 - c)) & 1)
            result.add_tuple(_candidates[c].first, _candidates[c].second);
    return result;
}

auto catdual::enumerate_structures(const Signature & sig, int n, uint64_t guard) -> vector<Structure>
{
    StructureEnumerator e{ sig, n, guard };
    vector<Structure> result;
    e.for_each([&] (Structure && s) { result.push_back(std::move(s)); });
    return result;
}
