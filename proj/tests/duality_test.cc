/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "oracles.hh"

#include <catdual/duality.hh>
#include <catdual/error.hh>
#include <catdual/homomorphism.hh>

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace catdual;

using std::string;
using std::vector;

namespace
{
    const Signature digraph_sig{ { Relation{ "E", 2 } } };
    const Signature mixed_sig{ { Relation{ "E", 2 }, Relation{ "U", 1 } } };
    const Signature ternary_sig{ { Relation{ "S", 3 } } };

    auto full_one_element(const Signature & sig) -> Structure
    {
        Structure s{ sig };
        s.add_element("x");
        for (int r = 0 ; r < sig.size() ; ++r)
            s.add_tuple(r, Tuple(sig.arity(r), 0));
        return s;
    }

    // The relation of the powerset dual computed straight from its
    // definition, over every k-tuple of admissible subsets.
    auto gamma_tuples(const Dfa & d, const Signature & sig, int relation) -> std::set<vector<unsigned>>
    {
        int n = d.state_count();
        vector<unsigned> universe;
        for (unsigned x = 0 ; x < (1u << n) ; ++x) {
            bool ok = (x >> d.start) & 1;
            for (int s = 0 ; s < n ; ++s)
                if (((x >> s) & 1) && d.terminal[s])
                    ok = false;
            if (ok)
                universe.push_back(x);
        }

        int k = sig.arity(relation);
        std::set<vector<unsigned>> result;
        vector<unsigned> tuple(k);
        std::function<void (int)> fill = [&] (int p) {
            if (p == k) {
                for (int i = 0 ; i < k ; ++i)
                    for (int j = 0 ; j < k ; ++j)
                        for (int a = 0 ; a < n ; ++a)
                            if ((tuple[i] >> a) & 1) {
                                auto b = d.next(a, letter_index(sig, Letter{ relation, i + 1, j + 1 }));
                                if (! ((tuple[j] >> b) & 1))
                                    return;
                            }
                result.insert(tuple);
                return;
            }
            for (auto x : universe) {
                tuple[p] = x;
                fill(p + 1);
            }
        };
        fill(0);
        return result;
    }

    auto subset_of(const Dfa & d, const string & name) -> unsigned
    {
        unsigned mask = 0;
        string inner = name.substr(1, name.size() - 2);
        std::size_t start = 0;
        while (start <= inner.size()) {
            auto comma = inner.find(',', start);
            auto member = inner.substr(start, comma == string::npos ? string::npos : comma - start);
            auto it = std::find(d.state_names.begin(), d.state_names.end(), member);
            EXPECT_NE(it, d.state_names.end()) << member;
            mask |= 1u << (it - d.state_names.begin());
            if (comma == string::npos)
                break;
            start = comma + 1;
        }
        return mask;
    }

    struct Language
    {
        string pattern;
        Signature sig;
        int verify_size;
    };

    const vector<Language> languages{
        { "E[1,2] E[1,2]", digraph_sig, 3 },
        { "(E[1,2])* E[1,1] (E[1,2])*", digraph_sig, 3 },
        { "E[1,2] E[2,1] | E[2,1] E[1,2]", digraph_sig, 3 },
        { "E[1,2] E[1,2] E[1,2]", digraph_sig, 3 },
        { "U[1,1] E[1,2] U[1,1]", mixed_sig, 3 },
        { "(E[1,2])* U[1,1] E[2,1]", mixed_sig, 3 },
        { "S[1,2] S[2,3]", ternary_sig, 2 },
        { "S[1,1] S[3,3] | S[2,3] S[3,2]", ternary_sig, 2 },
    };
}

TEST(Gamma, EmptyLanguage)
{
    auto result = dualize(Nfa::empty_language(digraph_sig), digraph_sig);
    auto & dual = result.dual;
    auto full = std::find_if(dual.elements().begin(), dual.elements().end(), [&] (const string & n) {
            return subset_of(result.source, n) == (1u << result.source.state_count()) - 1; });
    ASSERT_NE(full, dual.elements().end());
    int x = int(full - dual.elements().begin());
    EXPECT_TRUE(dual.contains(0, { x, x }));
    for (int size = 1 ; size <= 2 ; ++size)
        StructureEnumerator(digraph_sig, size).for_each([&] (const Structure & b) {
            EXPECT_TRUE(find_homomorphism(b, dual));
        });
}

TEST(Gamma, TwoEdgeWalk)
{
    auto result = dualize(regex_to_nfa("E[1,2] E[1,2]", digraph_sig), digraph_sig);
    auto & d = result.source;
    ASSERT_EQ(d.state_count(), 4);
    EXPECT_EQ(result.dual.size(), 4);
    ASSERT_EQ(result.dual.tuple_count(), 1);

    // The start state, the state after one letter, and the sink.
    int q1 = d.next(d.start, 1), sink = d.next(d.start, 0);
    auto t = result.dual.tuples(0)[0];
    EXPECT_EQ(subset_of(d, result.dual.element_name(t[0])), (1u << d.start) | (1u << sink));
    EXPECT_EQ(subset_of(d, result.dual.element_name(t[1])), (1u << d.start) | (1u << q1) | (1u << sink));
    EXPECT_TRUE(is_isomorphic(core(result.dual), oracle::digraph(2, { { 0, 1 } })));
}

TEST(Gamma, ElementNames)
{
    auto result = dualize(regex_to_nfa("E[1,2] E[1,2]", digraph_sig), digraph_sig);
    EXPECT_EQ(result.dual.elements(), (vector<string>{ "{q0}", "{q0,q1}", "{q0,q2}", "{q0,q1,q2}" }));
    EXPECT_EQ(write_structure(result.dual),
            "signature E/2\nstructure D\nelements {q0} {q0,q1} {q0,q2} {q0,q1,q2}\ntuple E {q0,q1} {q0,q1,q2}\n");
}

TEST(Gamma, EmptyDual)
{
    EXPECT_THROW(dualize(regex_to_nfa("EPS", digraph_sig), digraph_sig), EmptyDual);
    EXPECT_THROW(dualize(regex_to_nfa("EPS | E[1,2]", digraph_sig), digraph_sig), EmptyDual);
}

TEST(Gamma, Guards)
{
    auto n = regex_to_nfa("E[1,2] E[1,2] E[1,2] E[1,2]", digraph_sig);
    EXPECT_THROW(dualize(n, digraph_sig, DualityLimits{ default_max_dfa_states, 16 }), GuardExceeded);
    EXPECT_NO_THROW(dualize(n, digraph_sig, DualityLimits{ default_max_dfa_states, 64 }));
    EXPECT_THROW(dualize(n, digraph_sig, DualityLimits{ 3, default_subset_guard }), GuardExceeded);
}

TEST(Gamma, Mismatches)
{
    auto d = determinize(regex_to_nfa("E[1,2]", digraph_sig));
    EXPECT_THROW(gamma(d, mixed_sig), SignatureMismatch);
    d.delta.pop_back();
    EXPECT_THROW(gamma(d, digraph_sig), ValidationError);
}

TEST(Gamma, MatchesDefinition)
{
    for (auto & l : languages) {
        auto result = dualize(regex_to_nfa(l.pattern, l.sig), l.sig);
        auto & d = result.source;
        for (auto & name : result.dual.elements()) {
            auto x = subset_of(d, name);
            EXPECT_TRUE((x >> d.start) & 1);
            for (int s = 0 ; s < d.state_count() ; ++s)
                EXPECT_FALSE(((x >> s) & 1) && d.terminal[s]);
        }
        for (int r = 0 ; r < l.sig.size() ; ++r) {
            std::set<vector<unsigned>> got;
            for (auto & t : result.dual.tuples(r)) {
                vector<unsigned> masks;
                for (auto e : t)
                    masks.push_back(subset_of(d, result.dual.element_name(e)));
                got.insert(masks);
            }
            EXPECT_EQ(got, gamma_tuples(d, l.sig, r)) << l.pattern;
        }
    }
}

TEST(Dualize, VerifiedExhaustively)
{
    for (auto & l : languages) {
        auto n = regex_to_nfa(l.pattern, l.sig);
        auto v = verify_duality(n, l.sig, dualize(n, l.sig).dual, l.verify_size);
        EXPECT_TRUE(v.holds) << l.pattern;
    }
}

TEST(Dualize, NoObstructionMapsToTheDual)
{
    for (auto & l : languages) {
        auto n = regex_to_nfa(l.pattern, l.sig);
        auto dual = dualize(n, l.sig).dual;
        for (auto & w : enumerate_accepted(n, 4))
            EXPECT_FALSE(find_homomorphism(decode_word(l.sig, w), dual)) << format_word(l.sig, w);
    }
}

TEST(ObstructionDfa, Examples)
{
    auto full = obstruction_dfa(full_one_element(digraph_sig));
    for (auto & w : oracle::all_words(digraph_sig, 4))
        EXPECT_FALSE(accepts(full, w));

    auto edge = obstruction_dfa(oracle::digraph(2, { { 0, 1 } }));
    EXPECT_TRUE(accepts(edge, parse_word(digraph_sig, "E[1,2] E[1,2]")));
    EXPECT_FALSE(accepts(edge, parse_word(digraph_sig, "E[1,2]")));
}

TEST(ObstructionDfa, AcceptsExactlyTheNonMappingCaterpillars)
{
    std::mt19937 rng(21);
    auto words = oracle::all_words(mixed_sig, 3);
    for (int round = 0 ; round < 40 ; ++round) {
        auto a = oracle::random_structure(mixed_sig, 1 + round % 3, 0.4, rng);
        auto d = obstruction_dfa(a);
        auto positive = determinize(structure_to_nfa(a));
        for (auto & w : words) {
            EXPECT_EQ(accepts(d, w), ! oracle::brute_force_hom(decode_word(mixed_sig, w), a));
            EXPECT_NE(accepts(d, w), accepts(positive, w));
        }
    }
}

TEST(CaterpillarDuality, Edge)
{
    auto t2 = oracle::digraph(2, { { 0, 1 } });
    auto check = has_caterpillar_duality(t2);
    EXPECT_TRUE(check.holds);
    ASSERT_TRUE(check.witness);
    EXPECT_TRUE(is_homomorphism(check.c, t2, *check.witness));
    EXPECT_EQ(check.c.name(), "C");
}

TEST(CaterpillarDuality, SymmetricEdge)
{
    auto k2 = oracle::digraph(2, { { 0, 1 }, { 1, 0 } });
    auto check = has_caterpillar_duality(k2);
    EXPECT_FALSE(check.holds);
    EXPECT_FALSE(oracle::brute_force_hom(check.c, k2));
}

TEST(CaterpillarDuality, FullOneElement)
{
    EXPECT_TRUE(has_caterpillar_duality(full_one_element(mixed_sig)).holds);
}

TEST(CaterpillarDuality, COfAIsADual)
{
    for (int size = 1 ; size <= 2 ; ++size)
        StructureEnumerator(digraph_sig, size).for_each([&] (const Structure & a) {
            auto c = c_of(a);
            auto v = verify_duality(dfa_to_nfa(obstruction_dfa(a)), digraph_sig, c, 2);
            EXPECT_TRUE(v.holds) << write_structure(a);
        });
}

TEST(CaterpillarDuality, TargetsWithDuality)
{
    vector<Structure> small;
    for (int size = 1 ; size <= 2 ; ++size)
        for (auto & s : enumerate_structures(digraph_sig, size))
            small.push_back(s);

    vector<Structure> c_of_small;
    for (auto & a : small)
        c_of_small.push_back(c_of(a));

    int targets = 0;
    for (auto & b : small) {
        if (! has_caterpillar_duality(b).holds)
            continue;
        ++targets;
        for (unsigned i = 0 ; i < small.size() ; ++i)
            EXPECT_EQ(find_homomorphism(small[i], b).has_value(), find_homomorphism(c_of_small[i], b).has_value());
    }
    EXPECT_GT(targets, 5);
}

TEST(PathDuality, Language)
{
    auto d = path_language(digraph_sig);
    EXPECT_TRUE(d.is_total());
    EXPECT_TRUE(accepts(d, parse_word(digraph_sig, "E[1,2] E[2,1]")));
    EXPECT_FALSE(accepts(d, parse_word(digraph_sig, "E[1,1]")));
    EXPECT_TRUE(accepts(d, Word{}));

    auto m = path_language(mixed_sig);
    EXPECT_TRUE(accepts(m, parse_word(mixed_sig, "U[1,1] E[1,2] U[1,1]")));
    EXPECT_FALSE(accepts(m, parse_word(mixed_sig, "U[1,1] E[2,2]")));
}

TEST(PathDuality, Edge)
{
    auto t2 = oracle::digraph(2, { { 0, 1 } });
    auto check = has_path_duality(t2);
    EXPECT_TRUE(check.holds);
    EXPECT_EQ(check.c.name(), "CP");

    auto language = intersect(dfa_to_nfa(path_language(digraph_sig)), dfa_to_nfa(obstruction_dfa(t2)));
    EXPECT_TRUE(verify_duality(language, digraph_sig, check.c, 3).holds);
}

TEST(PathDuality, SymmetricEdge)
{
    EXPECT_FALSE(has_path_duality(oracle::digraph(2, { { 0, 1 }, { 1, 0 } })).holds);
}

TEST(Verify, EmptyLanguageAndFullTarget)
{
    auto v = verify_duality(Nfa::empty_language(digraph_sig), digraph_sig, full_one_element(digraph_sig), 3);
    EXPECT_TRUE(v.holds);
    EXPECT_EQ(v.checked, 2u + 16u + 512u);
}

TEST(Verify, WrongDual)
{
    auto n = regex_to_nfa("E[1,2] E[1,2]", digraph_sig);
    auto k2 = oracle::digraph(2, { { 0, 1 }, { 1, 0 } });
    auto v = verify_duality(n, digraph_sig, k2, 3);
    ASSERT_FALSE(v.holds);
    ASSERT_TRUE(v.counterexample);
    auto & b = *v.counterexample;
    bool maps = oracle::brute_force_hom(b, k2);
    bool obstructed = ! is_empty(intersect(n, structure_to_nfa(b))).empty;
    EXPECT_EQ(maps, obstructed);
    EXPECT_EQ(*v.mismatch == Mismatch::MapsButObstructed, maps);
    if (maps) {
        ASSERT_TRUE(v.obstruction);
        EXPECT_TRUE(accepts(n, *v.obstruction));
        EXPECT_TRUE(find_homomorphism(decode_word(digraph_sig, *v.obstruction), b));
        EXPECT_TRUE(is_homomorphism(b, k2, *v.map_to_dual));
    }
}

TEST(Verify, UnobstructedButNoMap)
{
    auto n = regex_to_nfa("E[1,2] E[1,2]", digraph_sig);
    auto v = verify_duality(n, digraph_sig, oracle::digraph(1, {}), 2);
    ASSERT_FALSE(v.holds);
    EXPECT_EQ(*v.mismatch, Mismatch::UnobstructedButNoMap);
    EXPECT_EQ(v.counterexample->tuple_count(), 1);
    EXPECT_FALSE(v.obstruction);
}

TEST(Verify, ParallelIsDeterministic)
{
    auto n = regex_to_nfa("E[1,2] E[2,1]", digraph_sig);
    auto wrong = dualize(regex_to_nfa("E[1,2] E[1,2]", digraph_sig), digraph_sig).dual;
    auto serial = verify_duality(n, digraph_sig, wrong, 3, 1);
    ASSERT_FALSE(serial.holds);
    for (int jobs : { 2, 4, 8 }) {
        auto parallel = verify_duality(n, digraph_sig, wrong, 3, jobs);
        EXPECT_FALSE(parallel.holds);
        EXPECT_EQ(parallel.checked, serial.checked);
        EXPECT_EQ(write_structure(*parallel.counterexample), write_structure(*serial.counterexample));
    }
    auto right = dualize(n, digraph_sig).dual;
    EXPECT_TRUE(verify_duality(n, digraph_sig, right, 3, 4).holds);
}

TEST(Verify, Errors)
{
    auto n = regex_to_nfa("E[1,2]", digraph_sig);
    EXPECT_THROW(verify_duality(n, digraph_sig, oracle::digraph(1, {}), 5), GuardExceeded);
    EXPECT_THROW(verify_duality(n, mixed_sig, full_one_element(mixed_sig), 1), SignatureMismatch);
}
