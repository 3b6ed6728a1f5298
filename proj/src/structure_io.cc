/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <catdual/structure_io.hh>
#include <catdual/error.hh>

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

using namespace catdual;

using std::string;
using std::string_view;
using std::to_string;
using std::vector;

namespace
{
    auto split_words(string_view line) -> vector<string>
    {
        vector<string> result;
        std::istringstream in{ string(line) };
        string word;
        while (in >> word)
            result.push_back(word);
        return result;
    }

    auto strip_comment(string_view line) -> string_view
    {
        auto hash = line.find('#');
        return hash == string_view::npos ? line : line.substr(0, hash);
    }
}

auto catdual::parse_signature_spec(string_view text, int line) -> Signature
{
    vector<Relation> relations;
    for (auto & word : split_words(text)) {
        auto slash = word.find('/');
        if (slash == string::npos || slash == 0 || slash + 1 == word.size())
            throw ParseError("expected NAME/ARITY, got '" + word + "'", line);

        int arity = 0;
        auto digits = string_view(word).substr(slash + 1);
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), arity);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || arity < 1)
            throw ParseError("bad arity in '" + word + "'", line);

        auto name = word.substr(0, slash);
        for (auto & r : relations)
            if (r.name == name)
                throw ParseError("relation " + name + " declared twice", line);
        relations.push_back(Relation{ name, arity });
    }
    return Signature{ std::move(relations) };
}

auto catdual::parse_signature_file(string_view text) -> Signature
{
    std::istringstream in{ string(text) };
    string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        auto words = split_words(strip_comment(line));
        if (words.empty())
            continue;
        if (words[0] == "signature" || words[0] == "alphabet-signature") {
            auto body = strip_comment(line);
            body = body.substr(body.find(words[0]) + words[0].size());
            return parse_signature_spec(body, number);
        }
    }
    throw ParseError("no signature line found");
}

auto catdual::parse_structure(string_view text) -> Structure
{
    std::istringstream in{ string(text) };
    string line;
    int number = 0;
    std::optional<Structure> result;

    while (std::getline(in, line)) {
        ++number;
        auto body = strip_comment(line);
        auto words = split_words(body);
        if (words.empty())
            continue;

        if (! result) {
            if (words[0] != "signature")
                throw ParseError("expected 'signature' as the first line", number);
            result.emplace(parse_signature_spec(body.substr(body.find("signature") + 9), number));
            continue;
        }

        if (words[0] == "signature")
            throw ParseError("second signature line", number);
        else if (words[0] == "structure") {
            if (words.size() != 2)
                throw ParseError("expected 'structure NAME'", number);
            result->set_name(words[1]);
        }
        else if (words[0] == "elements") {
            for (size_t i = 1 ; i < words.size() ; ++i)
                if (result->find_element(words[i]))
                    throw ParseError("duplicate element " + words[i], number);
                else
                    result->add_element(words[i]);
        }
        else if (words[0] == "tuple") {
            if (words.size() < 2)
                throw ParseError("expected 'tuple NAME e1 ... ek'", number);
            auto r = result->signature().find(words[1]);
            if (! r)
                throw ParseError("unknown relation " + words[1], number);
            int arity = result->signature().arity(*r);
            if (int(words.size()) - 2 != arity)
                throw ParseError("arity mismatch: " + words[1] + " has arity " + to_string(arity)
                        + " but " + to_string(words.size() - 2) + " entries given", number);
            Tuple t;
            for (size_t i = 2 ; i < words.size() ; ++i) {
                auto e = result->find_element(words[i]);
                if (! e)
                    throw ParseError("unknown element " + words[i], number);
                t.push_back(*e);
            }
            result->add_tuple(*r, std::move(t));
        }
        else
            throw ParseError("unknown directive '" + words[0] + "'", number);
    }

    if (! result)
        throw ParseError("missing signature line");
    if (result->size() == 0)
        throw ParseError("empty universe");
    return std::move(*result);
}

auto catdual::format_signature(const Signature & sig) -> string
{
    string result;
    for (auto & r : sig.relations()) {
        if (! result.empty())
            result += " ";
        result += r.name + "/" + to_string(r.arity);
    }
    return result;
}

auto catdual::write_structure(const Structure & s) -> string
{
    string result = "signature " + format_signature(s.signature()) + "\n";
    result += "structure " + s.name() + "\n";
    result += "elements";
    for (auto & e : s.elements())
        result += " " + e;
    result += "\n";
    for (int r = 0 ; r < s.signature().size() ; ++r)
        for (auto & t : s.tuples(r)) {
            result += "tuple " + s.signature()[r].name;
            for (auto e : t)
                result += " " + s.element_name(e);
            result += "\n";
        }
    return result;
}

auto catdual::structure_to_json(const Structure & s) -> nlohmann::json
{
    auto sig = nlohmann::json::array();
    for (auto & r : s.signature().relations())
        sig.push_back({ r.name, r.arity });

    auto relations = nlohmann::json::object();
    for (int r = 0 ; r < s.signature().size() ; ++r) {
        auto tuples = nlohmann::json::array();
        for (auto & t : s.tuples(r)) {
            auto names = nlohmann::json::array();
            for (auto e : t)
                names.push_back(s.element_name(e));
            tuples.push_back(names);
        }
        relations[s.signature()[r].name] = tuples;
    }

    return { { "signature", sig }, { "elements", s.elements() }, { "relations", relations } };
}

auto catdual::read_file(const string & path) -> string
{
    std::ifstream in{ path, std::ios::binary };
    if (! in)
        throw ParseError("cannot read file " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}
