/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef CATDUAL_GUARD_WORDS_HH
#define CATDUAL_GUARD_WORDS_HH 1

#include <catdual/structure.hh>

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace catdual
{
    /// The letter R[i,j] of the binary alphabet derived from a signature.
    /// Positions are 1-based. The defaulted ordering (relation, i, j) is the
    /// canonical letter order.
    struct Letter
    {
        int relation;
        int i;
        int j;

        auto diagonal() const -> bool { return i == j; }
        auto operator<=> (const Letter &) const = default;
    };

    using Word = std::vector<Letter>;

    /// All R[i,j] in canonical order: signature order, then i, then j.
    auto sigma2_alphabet(const Signature & sig) -> std::vector<Letter>;

    /// The same alphabet viewed as a signature of binary relations named
    /// "R[i,j]". Relation k of it is letter k of sigma2_alphabet.
    auto sigma2_signature(const Signature & sig) -> Signature;

    auto letter_index(const Signature & sig, const Letter & letter) -> int;

    auto format_letter(const Signature & sig, const Letter & letter) -> std::string;
    auto format_word(const Signature & sig, const Word & word) -> std::string;

    /// Reads NAME[i,j] starting at pos, advancing pos. Throws ParseError.
    auto parse_letter_at(const Signature & sig, std::string_view text, std::size_t & pos) -> Letter;

    /// Whitespace-separated (or juxtaposed) letters.
    auto parse_word(const Signature & sig, std::string_view text) -> Word;

    /// The directed path x0 ... xn over sigma2_signature(sig) spelling w.
    auto path_of_word(const Signature & sig, const Word & w) -> Structure;

    /// Same universe, (x_i, x_j) in R[i,j] for every R-tuple and every (i,j).
    auto beta(const Structure & s) -> Structure;

    /// Left adjoint of beta: one fresh R-tuple per pair in R[i,j], glued to
    /// the primed copies of the pair's endpoints at positions i and j.
    auto beta_star(const Structure & binary, const Signature & sig) -> Structure;

    auto decode_word(const Signature & sig, const Word & w) -> Structure;

    /// Throws ValidationError unless s is a caterpillar.
    auto encode_canonical(const Structure & s) -> Word;

    inline constexpr int default_word_block_bound = 6;

    /// Every word of length |blocks| that decodes to a structure isomorphic
    /// to s, sorted in canonical order.
    auto enumerate_words_of(const Structure & s, int block_bound = default_word_block_bound) -> std::vector<Word>;
}

#endif
