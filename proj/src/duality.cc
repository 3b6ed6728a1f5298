/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <catdual/duality.hh>
#include <catdual/error.hh>

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <limits>
#include <thread>

using namespace catdual;

using std::string;
using std::to_string;
using std::uint64_t;
using std::vector;

namespace
{
    auto deposit(uint64_t value, uint64_t mask) -> uint64_t
    {
        uint64_t result = 0;
        for (uint64_t bit = 1 ; mask ; bit <<= 1) {
            auto lowest = mask & -mask;
            if (value & bit)
                result |= lowest;
            mask ^= lowest;
        }
        return result;
    }

    auto extract(uint64_t value, uint64_t mask) -> uint64_t
    {
        uint64_t result = 0;
        for (uint64_t bit = 1 ; mask ; bit <<= 1) {
            auto lowest = mask & -mask;
            if (value & lowest)
                result |= bit;
            mask ^= lowest;
        }
        return result;
    }

    auto limit_message(const string & what) -> string
    {
        return what + " (the dual construction is exponential in the automaton, and doubly exponential for C(A); "
            "raise the limit with --max-subsets or --max-states)";
    }
}

auto catdual::gamma(const Dfa & dfa, const Signature & sig, uint64_t subset_guard) -> DualResult
{
    if (! (dfa.signature == sig))
        throw SignatureMismatch("automaton alphabet does not match the signature");
    if (! dfa.is_total())
        throw ValidationError("dual construction needs a complete deterministic automaton");

    int n = dfa.state_count();
    if (n >= 63 || (uint64_t(1) << n) > subset_guard)
        throw GuardExceeded(limit_message("dual construction over " + to_string(n) + " states needs 2^" + to_string(n)
                    + " subsets, above the limit of " + to_string(subset_guard)));
    if (dfa.terminal[dfa.start])
        throw EmptyDual("the language contains the empty word, so the one-vertex caterpillar is an obstruction "
                "and no dual with a nonempty universe exists");

    uint64_t terminal_mask = 0;
    for (int s = 0 ; s < n ; ++s)
        if (dfa.terminal[s])
            terminal_mask |= uint64_t(1) << s;
    uint64_t start_bit = uint64_t(1) << dfa.start;
    uint64_t all = n == 0 ? 0 : (~uint64_t(0) >> (64 - n));
    uint64_t free = all & ~terminal_mask & ~start_bit;

    uint64_t universe = uint64_t(1) << std::popcount(free);
    vector<uint64_t> masks(universe);
    for (uint64_t t = 0 ; t < universe ; ++t)
        masks[t] = start_bit | deposit(t, free);

    int letters = dfa.letter_count();
    vector<vector<uint64_t>> image(letters, vector<uint64_t>(universe, 0));
    for (int l = 0 ; l < letters ; ++l)
        for (uint64_t t = 0 ; t < universe ; ++t)
            for (auto m = masks[t] ; m ; m &= m - 1)
                image[l][t] |= uint64_t(1) << dfa.next(std::countr_zero(m), l);

    auto index_of = [&] (uint64_t mask) { return extract(mask, free); };

    Structure dual{ sig };
    dual.set_name("D");
    for (uint64_t t = 0 ; t < universe ; ++t) {
        string name = "{";
        bool first = true;
        for (auto m = masks[t] ; m ; m &= m - 1) {
            name += (first ? "" : ",") + dfa.state_names[std::countr_zero(m)];
            first = false;
        }
        dual.add_element(name + "}");
    }

    for (int r = 0 ; r < sig.size() ; ++r) {
        int k = sig.arity(r);
        auto letter = [&] (int i, int j) { return letter_index(sig, Letter{ r, i + 1, j + 1 }); };
        vector<uint64_t> chosen(k);

        std::function<void (int)> extend = [&] (int p) {
            if (p == k) {
                Tuple t;
                for (auto c : chosen)
                    t.push_back(int(c));
                dual.add_tuple(r, std::move(t));
                return;
            }

            uint64_t need = start_bit;
            for (int i = 0 ; i < p ; ++i)
                need |= image[letter(i, p)][chosen[i]];
            if (need & terminal_mask)
                return;

            uint64_t optional_bits = free & ~need;
            for (uint64_t sub = 0 ; ; sub = (sub - optional_bits) & optional_bits) {
                uint64_t x = need | sub;
                auto xi = index_of(x);
                bool ok = (image[letter(p, p)][xi] & ~x) == 0;
                for (int i = 0 ; i < p && ok ; ++i)
                    ok = (image[letter(p, i)][xi] & ~masks[chosen[i]]) == 0;
                if (ok) {
                    chosen[p] = xi;
                    extend(p + 1);
                }
                if (sub == optional_bits)
                    break;
            }
        };
        extend(0);
    }

    return DualResult{ std::move(dual), dfa, sig };
}

auto catdual::dualize(const Nfa & language, const Signature & sig, const DualityLimits & limits) -> DualResult
{
    if (! (language.signature == sig))
        throw SignatureMismatch("language alphabet does not match the signature");
    return gamma(determinize(language, limits.max_states), sig, limits.max_subsets);
}

auto catdual::obstruction_dfa(const Structure & s, const DualityLimits & limits) -> Dfa
{
    return complement_dfa(determinize(structure_to_nfa(s), limits.max_states));
}

auto catdual::c_of(const Structure & s, const DualityLimits & limits) -> Structure
{
    auto result = gamma(obstruction_dfa(s, limits), s.signature(), limits.max_subsets).dual;
    result.set_name("C");
    return result;
}

auto catdual::has_caterpillar_duality(const Structure & s, const DualityLimits & limits) -> DualityCheck
{
    auto c = c_of(s, limits);
    auto h = find_homomorphism(c, s);
    return DualityCheck{ h.has_value(), std::move(c), std::move(h) };
}

auto catdual::path_language(const Signature & sig) -> Dfa
{
    Dfa result;
    result.signature = sig;
    result.state_names = { "live", "sink" };
    result.start = 0;
    result.terminal = { 1, 0 };
    for (int s = 0 ; s < 2 ; ++s)
        for (auto & l : sigma2_alphabet(sig))
            result.delta.push_back(s == 1 || (l.diagonal() && sig.arity(l.relation) >= 2) ? 1 : 0);
    return result;
}

auto catdual::c_path_of(const Structure & s, const DualityLimits & limits) -> Structure
{
    auto & sig = s.signature();
    auto language = intersect(dfa_to_nfa(path_language(sig)), dfa_to_nfa(obstruction_dfa(s, limits)));
    auto result = dualize(language, sig, limits).dual;
    result.set_name("CP");
    return result;
}

auto catdual::has_path_duality(const Structure & s, const DualityLimits & limits) -> DualityCheck
{
    auto c = c_path_of(s, limits);
    auto h = find_homomorphism(c, s);
    return DualityCheck{ h.has_value(), std::move(c), std::move(h) };
}

auto catdual::verify_duality(const Nfa & language, const Signature & sig, const Structure & dual, int max_size,
        int jobs, uint64_t enumeration_guard) -> DualityVerdict
{
    if (! (language.signature == sig) || ! (dual.signature() == sig))
        throw SignatureMismatch("language, dual and signature disagree");

    // Construct every enumerator first so that a guard failure happens
    // before any work is done.
    vector<StructureEnumerator> sizes;
    for (int m = 1 ; m <= max_size ; ++m)
        sizes.emplace_back(sig, m, enumeration_guard);

    auto agrees = [&] (const Structure & b) {
        bool maps = find_homomorphism(b, dual).has_value();
        bool obstructed = ! is_empty(intersect(language, structure_to_nfa(b))).empty;
        return maps != obstructed;
    };

    DualityVerdict verdict;
    verdict.holds = true;
    for (auto & e : sizes) {
        std::atomic<uint64_t> next{ 0 };
        std::atomic<uint64_t> first_failure{ std::numeric_limits<uint64_t>::max() };

        auto work = [&] {
            while (true) {
                auto k = next.fetch_add(1);
                if (k >= e.count() || k > first_failure.load())
                    return;
                if (! agrees(e.at(k))) {
                    auto seen = first_failure.load();
                    while (k < seen && ! first_failure.compare_exchange_weak(seen, k))
                        ;
                }
            }
        };

        if (jobs <= 1)
            work();
        else {
            vector<std::thread> threads;
            for (int j = 0 ; j < jobs ; ++j)
                threads.emplace_back(work);
            for (auto & t : threads)
                t.join();
        }

        auto failed = first_failure.load();
        if (failed == std::numeric_limits<uint64_t>::max()) {
            verdict.checked += e.count();
            continue;
        }

        verdict.checked += failed + 1;
        verdict.holds = false;
        auto b = e.at(failed);
        auto h = find_homomorphism(b, dual);
        if (h) {
            verdict.mismatch = Mismatch::MapsButObstructed;
            verdict.map_to_dual = h;
            verdict.obstruction = is_empty(intersect(language, structure_to_nfa(b))).witness;
        }
        else
            verdict.mismatch = Mismatch::UnobstructedButNoMap;
        verdict.counterexample = std::move(b);
        return verdict;
    }
    return verdict;
}
