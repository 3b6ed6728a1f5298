/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef CATDUAL_GUARD_STRUCTURE_IO_HH
#define CATDUAL_GUARD_STRUCTURE_IO_HH 1

#include <catdual/structure.hh>

#include <json.hpp>

#include <string>
#include <string_view>

namespace catdual
{
    /// Parses "R/4 S/3 P/2" (the part after the `signature` keyword).
    auto parse_signature_spec(std::string_view text, int line = 0) -> Signature;

    /// Reads the `signature` line out of a signature or structure file.
    auto parse_signature_file(std::string_view text) -> Signature;

    /// Line-based structure format:
    ///
    ///     # comment
    ///     signature R/4 S/3 P/2
    ///     structure T
    ///     elements a b c
    ///     tuple R a b c d
    ///
    /// The signature line must come first; `elements` and `tuple` repeat.
    auto parse_structure(std::string_view text) -> Structure;

    auto format_signature(const Signature & sig) -> std::string;
    auto write_structure(const Structure & s) -> std::string;

    auto structure_to_json(const Structure & s) -> nlohmann::json;

    auto read_file(const std::string & path) -> std::string;
}

#endif
