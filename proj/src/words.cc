/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <catdual/words.hh>
#include <catdual/error.hh>
#include <catdual/homomorphism.hh>

#include <algorithm>
#include <cctype>
#include <numeric>

using namespace catdual;

using std::size_t;
using std::string;
using std::string_view;
using std::to_string;
using std::vector;

auto catdual::sigma2_alphabet(const Signature & sig) -> vector<Letter>
{
    vector<Letter> result;
    for (int r = 0 ; r < sig.size() ; ++r)
        for (int i = 1 ; i <= sig.arity(r) ; ++i)
            for (int j = 1 ; j <= sig.arity(r) ; ++j)
                result.push_back(Letter{ r, i, j });
    return result;
}

auto catdual::sigma2_signature(const Signature & sig) -> Signature
{
    vector<Relation> relations;
    for (auto & l : sigma2_alphabet(sig))
        relations.push_back(Relation{ format_letter(sig, l), 2 });
    return Signature{ std::move(relations) };
}

auto catdual::letter_index(const Signature & sig, const Letter & letter) -> int
{
    int offset = 0;
    for (int r = 0 ; r < letter.relation ; ++r)
        offset += sig.arity(r) * sig.arity(r);
    return offset + (letter.i - 1) * sig.arity(letter.relation) + (letter.j - 1);
}

auto catdual::format_letter(const Signature & sig, const Letter & letter) -> string
{
    return sig[letter.relation].name + "[" + to_string(letter.i) + "," + to_string(letter.j) + "]";
}

auto catdual::format_word(const Signature & sig, const Word & word) -> string
{
    string result;
    for (auto & l : word) {
        if (! result.empty())
            result += " ";
        result += format_letter(sig, l);
    }
    return result;
}

namespace
{
    auto read_index(string_view text, size_t & pos) -> int
    {
        if (pos >= text.size() || ! std::isdigit(static_cast<unsigned char>(text[pos])))
            throw ParseError("expected a position index at offset " + to_string(pos) + " in '" + string(text) + "'");
        int value = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            value = value * 10 + (text[pos++] - '0');
            if (value > 1000000)
                throw ParseError("position index too large in '" + string(text) + "'");
        }
        return value;
    }

    auto expect(string_view text, size_t & pos, char c) -> void
    {
        if (pos >= text.size() || text[pos] != c)
            throw ParseError(string("expected '") + c + "' at offset " + to_string(pos) + " in '" + string(text) + "'");
        ++pos;
    }
}

auto catdual::parse_letter_at(const Signature & sig, string_view text, size_t & pos) -> Letter
{
    auto start = pos;
    while (pos < text.size() && text[pos] != '[' && ! std::isspace(static_cast<unsigned char>(text[pos]))
            && text[pos] != '(' && text[pos] != ')' && text[pos] != '|' && text[pos] != '*')
        ++pos;
    auto name = text.substr(start, pos - start);
    if (name.empty())
        throw ParseError("expected a letter NAME[i,j] at offset " + to_string(start) + " in '" + string(text) + "'");

    auto r = sig.find(name);
    if (! r)
        throw ParseError("unknown relation " + string(name));

    expect(text, pos, '[');
    int i = read_index(text, pos);
    expect(text, pos, ',');
    int j = read_index(text, pos);
    expect(text, pos, ']');

    int arity = sig.arity(*r);
    if (i < 1 || i > arity || j < 1 || j > arity)
        throw ParseError("letter " + string(name) + "[" + to_string(i) + "," + to_string(j)
                + "] out of range for arity " + to_string(arity));
    return Letter{ *r, i, j };
}

auto catdual::parse_word(const Signature & sig, string_view text) -> Word
{
    Word result;
    size_t pos = 0;
    while (true) {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == text.size())
            break;
        result.push_back(parse_letter_at(sig, text, pos));
    }
    return result;
}

auto catdual::path_of_word(const Signature & sig, const Word & w) -> Structure
{
    Structure result{ sigma2_signature(sig) };
    result.set_name("P");
    for (size_t t = 0 ; t <= w.size() ; ++t)
        result.add_element("x" + to_string(t));
    for (size_t t = 0 ; t < w.size() ; ++t)
        result.add_tuple(letter_index(sig, w[t]), Tuple{ int(t), int(t) + 1 });
    return result;
}

auto catdual::beta(const Structure & s) -> Structure
{
    auto & sig = s.signature();
    Structure result{ sigma2_signature(sig) };
    result.set_name(s.name());
    for (auto & e : s.elements())
        result.add_element(e);

    for (int r = 0 ; r < sig.size() ; ++r)
        for (auto & t : s.tuples(r))
            for (int i = 1 ; i <= sig.arity(r) ; ++i)
                for (int j = 1 ; j <= sig.arity(r) ; ++j)
                    result.add_tuple(letter_index(sig, Letter{ r, i, j }), Tuple{ t[i - 1], t[j - 1] });
    return result;
}

auto catdual::beta_star(const Structure & binary, const Signature & sig) -> Structure
{
    if (! (binary.signature() == sigma2_signature(sig)))
        throw SignatureMismatch("beta_star input is not over the binary alphabet of the given signature");

    auto alphabet = sigma2_alphabet(sig);

    // The auxiliary structure: primed originals, then k fresh elements per pair.
    vector<string> names;
    for (auto & e : binary.elements())
        names.push_back(e + "'");

    struct FreshBlock
    {
        int relation;
        int first;
    };
    vector<FreshBlock> blocks;
    vector<int> parent(names.size());
    std::iota(parent.begin(), parent.end(), 0);

    auto find = [&] (int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };

    for (int l = 0 ; l < int(alphabet.size()) ; ++l) {
        auto & letter = alphabet[l];
        int k = sig.arity(letter.relation);
        for (auto & pair : binary.tuples(l)) {
            int b = int(blocks.size());
            int first = int(names.size());
            blocks.push_back(FreshBlock{ letter.relation, first });
            for (int p = 1 ; p <= k ; ++p) {
                names.push_back("b" + to_string(b) + "_p" + to_string(p));
                parent.push_back(int(parent.size()));
            }
            parent[find(first + letter.i - 1)] = find(pair[0]);
            parent[find(first + letter.j - 1)] = find(pair[1]);
        }
    }

    // Classes in order of their first member; each named by its least member.
    vector<int> class_of(names.size(), -1), root_class(names.size(), -1);
    vector<string> class_name;
    for (int x = 0 ; x < int(names.size()) ; ++x) {
        auto root = find(x);
        if (root_class[root] == -1) {
            root_class[root] = int(class_name.size());
            class_name.push_back(names[x]);
        }
        class_of[x] = root_class[root];
        if (names[x] < class_name[class_of[x]])
            class_name[class_of[x]] = names[x];
    }

    Structure result{ sig };
    result.set_name(binary.name());
    for (auto & n : class_name)
        result.add_element(n);
    for (auto & b : blocks) {
        Tuple t;
        for (int p = 0 ; p < sig.arity(b.relation) ; ++p)
            t.push_back(class_of[b.first + p]);
        result.add_tuple(b.relation, std::move(t));
    }
    return result;
}

auto catdual::decode_word(const Signature & sig, const Word & w) -> Structure
{
    auto result = beta_star(path_of_word(sig, w), sig);
    result.set_name("T");
    return result;
}

auto catdual::encode_canonical(const Structure & s) -> Word
{
    if (! is_caterpillar(s))
        throw ValidationError("structure " + s.name() + " is not a caterpillar");

    auto g = incidence_graph(s);
    if (g.blocks.empty())
        return {};
    if (g.blocks.size() == 1)
        return { Letter{ g.blocks[0].relation, 1, 1 } };

    auto c = classify(s);
    vector<char> leaf(s.size(), 0);
    for (auto e : c.leaves)
        leaf[e] = 1;

    // Non-pendant blocks link consecutive spine elements; pendant blocks
    // hang off exactly one spine element.
    struct Link
    {
        int block;
        int other;
        int from_position;
        int to_position;
    };
    vector<vector<Link>> links(s.size());
    for (auto b : c.non_pendant_blocks) {
        auto & t = g.blocks[b].tuple;
        vector<int> positions;
        for (int p = 0 ; p < int(t.size()) ; ++p)
            if (! leaf[t[p]])
                positions.push_back(p);
        auto p = positions.at(0), q = positions.at(1);
        links[t[p]].push_back(Link{ b, t[q], p + 1, q + 1 });
        links[t[q]].push_back(Link{ b, t[p], q + 1, p + 1 });
    }

    vector<vector<Letter>> legs(s.size());
    for (auto b : c.pendant_blocks) {
        auto & t = g.blocks[b].tuple;
        for (int p = 0 ; p < int(t.size()) ; ++p)
            if (! leaf[t[p]])
                legs[t[p]].push_back(Letter{ g.blocks[b].relation, p + 1, p + 1 });
    }
    for (auto & l : legs)
        std::sort(l.begin(), l.end());

    int start = -1;
    for (auto e : c.non_leaves)
        if (links[e].size() <= 1) {
            start = e;
            break;
        }

    auto walk = [&] (int from) {
        Word result;
        int previous_block = -1;
        int at = from;
        while (true) {
            result.insert(result.end(), legs[at].begin(), legs[at].end());
            auto next = std::find_if(links[at].begin(), links[at].end(), [&] (const Link & l) { return l.block != previous_block; });
            if (next == links[at].end())
                break;
            result.push_back(Letter{ g.blocks[next->block].relation, next->from_position, next->to_position });
            previous_block = next->block;
            at = next->other;
        }
        return result;
    };

    auto forward = walk(start);
    int end = start;
    for (auto e : c.non_leaves)
        if (e != start && links[e].size() <= 1)
            end = e;
    auto backward = walk(end);
    return std::min(forward, backward);
}

namespace
{
    // Occurrence profile multiset of decode_word(w), computed on ids only.
    auto decoded_profile(const Signature & sig, const Word & w, const vector<int> & offset) -> vector<vector<int>>
    {
        int n = int(w.size()) + 1;
        vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&] (int x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };

        vector<int> first(w.size());
        for (size_t t = 0 ; t < w.size() ; ++t) {
            int k = sig.arity(w[t].relation);
            first[t] = int(parent.size());
            for (int p = 0 ; p < k ; ++p)
                parent.push_back(int(parent.size()));
            parent[find(first[t] + w[t].i - 1)] = find(int(t));
            parent[find(first[t] + w[t].j - 1)] = find(int(t) + 1);
        }

        int columns = offset.back();
        vector<int> slot(parent.size(), -1);
        vector<vector<int>> result;
        for (size_t t = 0 ; t < w.size() ; ++t)
            for (int p = 0 ; p < sig.arity(w[t].relation) ; ++p) {
                auto root = find(first[t] + p);
                if (slot[root] == -1) {
                    slot[root] = int(result.size());
                    result.emplace_back(columns, 0);
                }
                ++result[slot[root]][offset[w[t].relation] + p];
            }
        for (int x = 0 ; x < n ; ++x)
            if (slot[find(x)] == -1) {
                slot[find(x)] = int(result.size());
                result.emplace_back(columns, 0);
            }
        std::sort(result.begin(), result.end());
        return result;
    }
}

auto catdual::enumerate_words_of(const Structure & s, int block_bound) -> vector<Word>
{
    if (! is_caterpillar(s))
        throw ValidationError("structure " + s.name() + " is not a caterpillar");

    auto & sig = s.signature();
    vector<int> symbols;
    for (int r = 0 ; r < sig.size() ; ++r)
        for (size_t n = 0 ; n < s.tuples(r).size() ; ++n)
            symbols.push_back(r);

    if (int(symbols.size()) > block_bound)
        throw GuardExceeded("word enumeration limited to " + to_string(block_bound) + " blocks, structure has "
                + to_string(symbols.size()));

    vector<int> offset{ 0 };
    for (auto & r : sig.relations())
        offset.push_back(offset.back() + r.arity);
    vector<vector<int>> target_profile(s.size(), vector<int>(offset.back(), 0));
    for (int r = 0 ; r < sig.size() ; ++r)
        for (auto & t : s.tuples(r))
            for (size_t p = 0 ; p < t.size() ; ++p)
                ++target_profile[t[p]][offset[r] + p];
    std::sort(target_profile.begin(), target_profile.end());

    vector<Word> result;
    std::sort(symbols.begin(), symbols.end());
    do {
        Word w;
        for (auto r : symbols)
            w.push_back(Letter{ r, 1, 1 });

        // odometer over the position pairs of every letter
        while (true) {
            if (decoded_profile(sig, w, offset) == target_profile && is_isomorphic(decode_word(sig, w), s))
                result.push_back(w);

            int t = int(w.size()) - 1;
            for ( ; t >= 0 ; --t) {
                int k = sig.arity(w[t].relation);
                if (w[t].j < k) {
                    ++w[t].j;
                    break;
                }
                if (w[t].i < k) {
                    ++w[t].i;
                    w[t].j = 1;
                    break;
                }
                w[t].i = w[t].j = 1;
            }
            if (t < 0)
                break;
        }
    } while (std::next_permutation(symbols.begin(), symbols.end()));

    std::sort(result.begin(), result.end());
    return result;
}
