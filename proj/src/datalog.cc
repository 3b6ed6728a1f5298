/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <catdual/datalog.hh>
#include <catdual/error.hh>

#include <algorithm>
#include <cctype>
#include <map>

using namespace catdual;

using std::optional;
using std::pair;
using std::string;
using std::string_view;
using std::to_string;
using std::vector;

auto DatalogProgram::find_idb(string_view name) const -> optional<int>
{
    for (size_t i = 0 ; i < idbs.size() ; ++i)
        if (idbs[i] == name)
            return int(i);
    return std::nullopt;
}

namespace
{
    struct Token
    {
        enum class Kind { Identifier, LeftParen, RightParen, Comma, Period, Implies, End } kind;
        string text;
        int line;
    };

    auto tokenise(string_view text) -> vector<Token>
    {
        vector<Token> result;
        int line = 1;
        size_t pos = 0;
        auto ident_char = [] (char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };

        while (pos < text.size()) {
            char c = text[pos];
            if (c == '\n') {
                ++line;
                ++pos;
            }
            else if (std::isspace(static_cast<unsigned char>(c)))
                ++pos;
            else if (c == '%') {
                while (pos < text.size() && text[pos] != '\n')
                    ++pos;
            }
            else if (c == '(') { result.push_back({ Token::Kind::LeftParen, "(", line }); ++pos; }
            else if (c == ')') { result.push_back({ Token::Kind::RightParen, ")", line }); ++pos; }
            else if (c == ',') { result.push_back({ Token::Kind::Comma, ",", line }); ++pos; }
            else if (c == '.') { result.push_back({ Token::Kind::Period, ".", line }); ++pos; }
            else if (c == ':' && pos + 1 < text.size() && text[pos + 1] == '-') {
                result.push_back({ Token::Kind::Implies, ":-", line });
                pos += 2;
            }
            else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                auto start = pos;
                while (pos < text.size() && ident_char(text[pos]))
                    ++pos;
                result.push_back({ Token::Kind::Identifier, string(text.substr(start, pos - start)), line });
            }
            else
                throw ParseError(string("unexpected character '") + c + "'", line);
        }
        result.push_back({ Token::Kind::End, "", line });
        return result;
    }

    struct Atom
    {
        string name;
        vector<string> args;
        bool bare;
        int line;
    };

    struct RawRule
    {
        Atom head;
        vector<Atom> body;
        int line;
    };

    class Parser
    {
        private:
            vector<Token> _tokens;
            size_t _pos = 0;

            auto peek() const -> const Token & { return _tokens[_pos]; }

            auto expect(Token::Kind kind, const string & what) -> const Token &
            {
                if (peek().kind != kind)
                    throw ParseError("expected " + what + (peek().kind == Token::Kind::End ? " at end of input" : ", got '" + peek().text + "'"), peek().line);
                return _tokens[_pos++];
            }

            auto atom() -> Atom
            {
                auto & name = expect(Token::Kind::Identifier, "a predicate name");
                Atom result{ name.text, {}, true, name.line };
                if (std::isupper(static_cast<unsigned char>(name.text[0])) && peek().kind != Token::Kind::LeftParen)
                    throw ParseError("expected a predicate, got variable " + name.text, name.line);
                if (peek().kind != Token::Kind::LeftParen)
                    return result;

                ++_pos;
                result.bare = false;
                while (true) {
                    auto & arg = expect(Token::Kind::Identifier, "a variable");
                    if (! std::isupper(static_cast<unsigned char>(arg.text[0])))
                        throw ParseError("argument " + arg.text + " is not a variable (variables are capitalised)", arg.line);
                    result.args.push_back(arg.text);
                    if (peek().kind == Token::Kind::Comma) {
                        ++_pos;
                        continue;
                    }
                    expect(Token::Kind::RightParen, "',' or ')'");
                    break;
                }
                return result;
            }

        public:
            explicit Parser(string_view text) :
                _tokens(tokenise(text))
            {
            }

            auto rules() -> vector<RawRule>
            {
                vector<RawRule> result;
                while (peek().kind != Token::Kind::End) {
                    RawRule rule{ atom(), {}, 0 };
                    rule.line = rule.head.line;
                    if (peek().kind == Token::Kind::Implies) {
                        ++_pos;
                        rule.body.push_back(atom());
                        while (peek().kind == Token::Kind::Comma) {
                            ++_pos;
                            rule.body.push_back(atom());
                        }
                    }
                    expect(Token::Kind::Period, "'.' ending the rule");
                    result.push_back(std::move(rule));
                }
                return result;
            }
    };

    auto reject(const string & message, int line) -> ValidationError
    {
        return ValidationError("line " + to_string(line) + ": " + message);
    }
}

auto catdual::parse_program(string_view text, const Signature & sig) -> DatalogProgram
{
    auto raw = Parser{ text }.rules();

    DatalogProgram result{ sig, {}, -1, {}, {} };

    auto idb = [&] (const Atom & a) -> int {
        if (a.name == "goal")
            throw reject("'goal' may only appear as the head of a goal rule", a.line);
        if (a.bare || a.args.size() != 1)
            throw reject("IDB " + a.name + " must be unary (the fragment is monadic)", a.line);
        if (auto i = result.find_idb(a.name))
            return *i;
        result.idbs.push_back(a.name);
        return int(result.idbs.size()) - 1;
    };

    for (auto & rule : raw) {
        if (rule.head.name == "goal" && rule.head.bare) {
            if (rule.body.size() != 1)
                throw reject("a goal rule has exactly one body atom", rule.line);
            if (sig.find(rule.body[0].name))
                throw reject("a goal rule's body must be an IDB, not relation " + rule.body[0].name, rule.line);
            auto g = idb(rule.body[0]);
            if (std::find(result.goals.begin(), result.goals.end(), g) == result.goals.end())
                result.goals.push_back(g);
            continue;
        }

        if (sig.find(rule.head.name))
            throw reject("relation " + rule.head.name + " cannot be derived", rule.line);
        auto head = idb(rule.head);

        if (rule.body.empty()) {
            if (result.init != -1)
                throw reject("more than one initialisation rule", rule.line);
            result.init = head;
            continue;
        }

        const Atom * body_idb = nullptr;
        const Atom * edb = nullptr;
        for (auto & a : rule.body) {
            if (sig.find(a.name)) {
                if (edb)
                    throw reject("more than one EDB atom in the body", rule.line);
                edb = &a;
            }
            else {
                if (body_idb)
                    throw reject("more than one IDB atom in the body (the fragment is linear)", rule.line);
                body_idb = &a;
            }
        }
        if (! body_idb)
            throw reject("rule has no IDB atom in its body", rule.line);
        if (! edb)
            throw reject("rule has no EDB atom in its body", rule.line);

        auto body = idb(*body_idb);
        int relation = *sig.find(edb->name);
        if (edb->bare || int(edb->args.size()) != sig.arity(relation))
            throw reject("relation " + edb->name + " has arity " + to_string(sig.arity(relation)), rule.line);

        for (size_t p = 0 ; p < edb->args.size() ; ++p)
            for (size_t q = 0 ; q < p ; ++q)
                if (edb->args[p] == edb->args[q])
                    throw reject("variable " + edb->args[p] + " occurs at two positions of " + edb->name
                            + ", which no single letter can express", rule.line);

        auto position_of = [&] (const string & v) -> int {
            auto it = std::find(edb->args.begin(), edb->args.end(), v);
            return it == edb->args.end() ? 0 : int(it - edb->args.begin()) + 1;
        };

        int m = position_of(rule.head.args[0]);
        int n = position_of(body_idb->args[0]);
        if (m == 0)
            throw reject("head variable " + rule.head.args[0] + " does not occur in " + edb->name, rule.line);
        if (n == 0)
            throw reject("body variable " + body_idb->args[0] + " does not occur in " + edb->name, rule.line);

        result.rules.push_back(DatalogRule{ head, body, relation, m, n });
    }

    if (result.init == -1)
        throw ValidationError("program has no initialisation rule such as 'r1(X).'");
    if (result.goals.empty())
        throw ValidationError("program has no goal rule such as 'goal :- r1(X).'");
    return result;
}

auto catdual::format_program(const DatalogProgram & p) -> string
{
    string result = p.idbs[p.init] + "(X).\n";
    for (auto & r : p.rules) {
        int k = p.signature.arity(r.relation);
        string head = r.head_position == r.body_position ? "X" : "Y";
        string args;
        for (int q = 1 ; q <= k ; ++q) {
            if (q != 1)
                args += ",";
            if (q == r.body_position)
                args += "X";
            else if (q == r.head_position)
                args += "Y";
            else
                args += "Z" + to_string(q);
        }
        result += p.idbs[r.head] + "(" + head + ") :- " + p.idbs[r.body] + "(X), " + p.signature[r.relation].name + "(" + args + ").\n";
    }
    for (auto g : p.goals)
        result += "goal :- " + p.idbs[g] + "(X).\n";
    return result;
}

auto catdual::program_to_nfa(const DatalogProgram & p) -> Nfa
{
    Nfa result{ p.signature };
    result.state_names = p.idbs;
    result.initials = { p.init };
    result.terminals = p.goals;
    for (auto & r : p.rules)
        result.add_transition(r.body, letter_index(p.signature, Letter{ r.relation, r.body_position, r.head_position }), r.head);
    result.normalise();
    return result;
}

auto catdual::evaluate(const DatalogProgram & p, const Structure & s, Evaluation how) -> EvaluationResult
{
    vector<int> relation_in_s(p.signature.size(), -1);
    for (auto & r : p.rules) {
        auto & rel = p.signature[r.relation];
        auto found = s.signature().find(rel.name);
        if (! found || s.signature().arity(*found) != rel.arity)
            throw SignatureMismatch("structure has no relation " + rel.name + "/" + to_string(rel.arity));
        relation_in_s[r.relation] = *found;
    }

    int idbs = int(p.idbs.size());
    struct Origin
    {
        int rule;
        int from;
        long order;
    };
    vector<vector<optional<Origin>>> derived(idbs, vector<optional<Origin>>(s.size()));
    long order = 0;
    vector<pair<int, int>> fresh;

    for (int e = 0 ; e < s.size() ; ++e) {
        derived[p.init][e] = Origin{ -1, -1, order++ };
        fresh.emplace_back(p.init, e);
    }

    vector<vector<int>> rules_from(idbs);
    for (size_t r = 0 ; r < p.rules.size() ; ++r)
        rules_from[p.rules[r].body].push_back(int(r));

    // Fire every rule whose body fact is (idb, e), collecting new facts.
    auto fire = [&] (int idb, int e, vector<pair<int, int>> & out) {
        for (auto r : rules_from[idb]) {
            auto & rule = p.rules[r];
            for (auto & t : s.tuples(relation_in_s[rule.relation]))
                if (t[rule.body_position - 1] == e) {
                    auto a = t[rule.head_position - 1];
                    if (! derived[rule.head][a]) {
                        derived[rule.head][a] = Origin{ r, e, order++ };
                        out.emplace_back(rule.head, a);
                    }
                }
        }
    };

    if (how == Evaluation::SemiNaive) {
        for (size_t head = 0 ; head < fresh.size() ; ++head) {
            auto [idb, e] = fresh[head];
            fire(idb, e, fresh);
        }
    }
    else {
        bool changed = true;
        while (changed) {
            vector<pair<int, int>> all;
            for (int i = 0 ; i < idbs ; ++i)
                for (int e = 0 ; e < s.size() ; ++e)
                    if (derived[i][e])
                        all.emplace_back(i, e);
            vector<pair<int, int>> added;
            for (auto & [i, e] : all)
                fire(i, e, added);
            changed = ! added.empty();
        }
    }

    EvaluationResult result{ false, vector<vector<int>>(idbs), std::nullopt };
    for (int i = 0 ; i < idbs ; ++i)
        for (int e = 0 ; e < s.size() ; ++e)
            if (derived[i][e])
                result.fixpoint[i].push_back(e);

    optional<pair<int, int>> first_goal;
    for (auto g : p.goals)
        for (auto e : result.fixpoint[g])
            if (! first_goal || derived[g][e]->order < derived[first_goal->first][first_goal->second]->order)
                first_goal = pair{ g, e };

    if (first_goal) {
        result.goal = true;
        Word w;
        auto [idb, e] = *first_goal;
        while (derived[idb][e]->rule != -1) {
            auto & origin = *derived[idb][e];
            auto & rule = p.rules[origin.rule];
            w.push_back(Letter{ rule.relation, rule.body_position, rule.head_position });
            idb = rule.body;
            e = origin.from;
        }
        std::reverse(w.begin(), w.end());
        result.derivation = w;
    }
    return result;
}
