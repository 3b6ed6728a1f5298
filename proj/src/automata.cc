/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <catdual/automata.hh>
#include <catdual/error.hh>
#include <catdual/structure_io.hh>

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <map>
#include <sstream>

using namespace catdual;

using std::function;
using std::optional;
using std::pair;
using std::string;
using std::string_view;
using std::to_string;
using std::vector;

namespace
{
    auto letters_of(const Signature & sig) -> int
    {
        int result = 0;
        for (auto & r : sig.relations())
            result += r.arity * r.arity;
        return result;
    }

    auto sort_unique(vector<int> & v) -> void
    {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }

    /// Adjacency view of an Nfa for simulation.
    struct Moves
    {
        vector<vector<int>> eps;
        vector<vector<pair<int, int>>> out;   // (letter, to), sorted by letter
        vector<char> terminal;

        explicit Moves(const Nfa & nfa) :
            eps(nfa.state_count()),
            out(nfa.state_count()),
            terminal(nfa.state_count(), 0)
        {
            for (auto & t : nfa.transitions)
                if (t.label == epsilon)
                    eps[t.from].push_back(t.to);
                else
                    out[t.from].emplace_back(t.label, t.to);
            for (auto & o : out)
                std::sort(o.begin(), o.end());
            for (auto t : nfa.terminals)
                terminal[t] = 1;
        }

        auto closure(vector<int> states) const -> vector<int>
        {
            vector<char> seen(eps.size(), 0);
            for (auto s : states)
                seen[s] = 1;
            for (size_t head = 0 ; head < states.size() ; ++head)
                for (auto t : eps[states[head]])
                    if (! seen[t]) {
                        seen[t] = 1;
                        states.push_back(t);
                    }
            sort_unique(states);
            return states;
        }

        auto step(const vector<int> & states, int letter) const -> vector<int>
        {
            vector<int> result;
            for (auto s : states) {
                auto it = std::lower_bound(out[s].begin(), out[s].end(), pair{ letter, std::numeric_limits<int>::min() });
                for ( ; it != out[s].end() && it->first == letter ; ++it)
                    result.push_back(it->second);
            }
            return closure(std::move(result));
        }

        auto any_terminal(const vector<int> & states) const -> bool
        {
            return std::any_of(states.begin(), states.end(), [&] (int s) { return terminal[s]; });
        }

        /// Least number of letters needed to reach a terminal from each state.
        auto distance_to_accept() const -> vector<int>
        {
            const int unreachable = std::numeric_limits<int>::max();
            vector<vector<pair<int, int>>> reverse(eps.size());
            for (size_t s = 0 ; s < eps.size() ; ++s) {
                for (auto t : eps[s])
                    reverse[t].emplace_back(int(s), 0);
                for (auto & [l, t] : out[s])
                    reverse[t].emplace_back(int(s), 1);
            }

            vector<int> dist(eps.size(), unreachable);
            std::deque<int> queue;
            for (size_t s = 0 ; s < eps.size() ; ++s)
                if (terminal[s]) {
                    dist[s] = 0;
                    queue.push_back(int(s));
                }
            while (! queue.empty()) {
                auto s = queue.front();
                queue.pop_front();
                for (auto & [p, w] : reverse[s])
                    if (dist[s] + w < dist[p]) {
                        dist[p] = dist[s] + w;
                        if (w == 0)
                            queue.push_front(p);
                        else
                            queue.push_back(p);
                    }
            }
            return dist;
        }
    };

    auto min_distance(const vector<int> & states, const vector<int> & dist) -> int
    {
        int result = std::numeric_limits<int>::max();
        for (auto s : states)
            result = std::min(result, dist[s]);
        return result;
    }
}

Nfa::Nfa(Signature sig) :
    signature(std::move(sig))
{
}

auto Nfa::letter_count() const -> int
{
    return letters_of(signature);
}

auto Nfa::add_state(string name) -> int
{
    state_names.push_back(std::move(name));
    return int(state_names.size()) - 1;
}

auto Nfa::add_transition(int from, int label, int to) -> void
{
    transitions.push_back(Transition{ from, label, to });
}

auto Nfa::normalise() -> void
{
    sort_unique(initials);
    sort_unique(terminals);
    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());

    auto check_state = [&] (int s) {
        if (s < 0 || s >= state_count())
            throw ValidationError("automaton refers to an undeclared state");
    };
    for (auto s : initials)
        check_state(s);
    for (auto s : terminals)
        check_state(s);
    for (auto & t : transitions) {
        check_state(t.from);
        check_state(t.to);
        if (t.label != epsilon && (t.label < 0 || t.label >= letter_count()))
            throw ValidationError("automaton transition label outside the alphabet");
    }
}

auto Nfa::empty_language(const Signature & sig) -> Nfa
{
    Nfa result{ sig };
    result.initials.push_back(result.add_state("q0"));
    return result;
}

auto Dfa::letter_count() const -> int
{
    return letters_of(signature);
}

auto Dfa::is_total() const -> bool
{
    if (start < 0 || start >= state_count() || int(terminal.size()) != state_count())
        return false;
    if (delta.size() != std::size_t(state_count()) * letter_count())
        return false;
    return std::all_of(delta.begin(), delta.end(), [&] (int t) { return t >= 0 && t < state_count(); });
}

namespace
{
    class RegexCompiler
    {
        private:
            const Signature & _sig;
            string_view _text;
            std::size_t _pos = 0;
            Nfa _nfa;

            struct Fragment
            {
                int start;
                int accept;
            };

            auto skip_space() -> void
            {
                while (_pos < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos])))
                    ++_pos;
            }

            auto peek() -> char
            {
                skip_space();
                return _pos < _text.size() ? _text[_pos] : '\0';
            }

            auto fail(const string & message) -> ParseError
            {
                return ParseError(message + " at offset " + to_string(_pos) + " in regex '" + string(_text) + "'");
            }

            auto fresh() -> int
            {
                return _nfa.add_state("q" + to_string(_nfa.state_count()));
            }

            auto alternation() -> Fragment
            {
                auto left = concatenation();
                while (peek() == '|') {
                    ++_pos;
                    auto right = concatenation();
                    Fragment f{ fresh(), fresh() };
                    _nfa.add_transition(f.start, epsilon, left.start);
                    _nfa.add_transition(f.start, epsilon, right.start);
                    _nfa.add_transition(left.accept, epsilon, f.accept);
                    _nfa.add_transition(right.accept, epsilon, f.accept);
                    left = f;
                }
                return left;
            }

            auto concatenation() -> Fragment
            {
                auto c = peek();
                if (c == '\0' || c == ')' || c == '|' || c == '*')
                    throw fail("expected a letter, EPS or '('");

                auto result = starred();
                while (true) {
                    c = peek();
                    if (c == '\0' || c == ')' || c == '|')
                        break;
                    auto next = starred();
                    _nfa.add_transition(result.accept, epsilon, next.start);
                    result.accept = next.accept;
                }
                return result;
            }

            auto starred() -> Fragment
            {
                auto inner = atom();
                while (peek() == '*') {
                    ++_pos;
                    Fragment f{ fresh(), fresh() };
                    _nfa.add_transition(f.start, epsilon, inner.start);
                    _nfa.add_transition(f.start, epsilon, f.accept);
                    _nfa.add_transition(inner.accept, epsilon, inner.start);
                    _nfa.add_transition(inner.accept, epsilon, f.accept);
                    inner = f;
                }
                return inner;
            }

            auto atom() -> Fragment
            {
                auto c = peek();
                if (c == '(') {
                    ++_pos;
                    auto inner = alternation();
                    if (peek() != ')')
                        throw fail("expected ')'");
                    ++_pos;
                    return inner;
                }
                if (c == '*')
                    throw fail("'*' with nothing to repeat");

                if (_text.substr(_pos, 3) == "EPS") {
                    auto after = _pos + 3 < _text.size() ? _text[_pos + 3] : ' ';
                    if (std::isspace(static_cast<unsigned char>(after)) || after == '(' || after == ')' || after == '|' || after == '*') {
                        _pos += 3;
                        Fragment f{ fresh(), fresh() };
                        _nfa.add_transition(f.start, epsilon, f.accept);
                        return f;
                    }
                }

                auto letter = parse_letter_at(_sig, _text, _pos);
                Fragment f{ fresh(), fresh() };
                _nfa.add_transition(f.start, letter_index(_sig, letter), f.accept);
                return f;
            }

        public:
            RegexCompiler(string_view text, const Signature & sig) :
                _sig(sig),
                _text(text),
                _nfa(sig)
            {
            }

            auto compile() -> Nfa
            {
                auto f = alternation();
                if (peek() != '\0')
                    throw fail("unexpected '" + string(1, peek()) + "'");
                _nfa.initials = { f.start };
                _nfa.terminals = { f.accept };
                _nfa.normalise();
                return std::move(_nfa);
            }
    };
}

auto catdual::regex_to_nfa(string_view pattern, const Signature & sig) -> Nfa
{
    return RegexCompiler{ pattern, sig }.compile();
}

auto catdual::determinize(const Nfa & nfa, int max_states) -> Dfa
{
    Moves moves{ nfa };
    int letters = nfa.letter_count();

    Dfa result;
    result.signature = nfa.signature;
    std::map<vector<int>, int> ids;

    auto intern = [&] (vector<int> subset) -> int {
        auto it = ids.find(subset);
        if (it != ids.end())
            return it->second;
        if (int(ids.size()) >= max_states)
            throw GuardExceeded("determinization exceeded " + to_string(max_states)
                    + " states (the subset construction is exponential; raise --max-states)");
        int id = int(ids.size());
        ids.emplace(subset, id);
        result.state_names.push_back("q" + to_string(id));
        result.terminal.push_back(moves.any_terminal(subset));
        result.members.push_back(std::move(subset));
        return id;
    };

    result.start = intern(moves.closure(nfa.initials));
    for (int s = 0 ; s < int(result.members.size()) ; ++s) {
        result.delta.resize(std::size_t(s + 1) * letters);
        for (int l = 0 ; l < letters ; ++l) {
            auto target = intern(moves.step(result.members[s], l));
            result.delta[std::size_t(s) * letters + l] = target;
        }
    }
    result.delta.resize(std::size_t(result.state_count()) * letters);
    return result;
}

auto catdual::complement_dfa(const Dfa & dfa) -> Dfa
{
    auto result = dfa;
    for (auto & t : result.terminal)
        t = ! t;
    return result;
}

auto catdual::dfa_to_nfa(const Dfa & dfa) -> Nfa
{
    Nfa result{ dfa.signature };
    result.state_names = dfa.state_names;
    result.initials = { dfa.start };
    for (int s = 0 ; s < dfa.state_count() ; ++s) {
        if (dfa.terminal[s])
            result.terminals.push_back(s);
        for (int l = 0 ; l < dfa.letter_count() ; ++l)
            result.add_transition(s, l, dfa.next(s, l));
    }
    result.normalise();
    return result;
}

auto catdual::intersect(const Nfa & a, const Nfa & b) -> Nfa
{
    if (! (a.signature == b.signature))
        throw SignatureMismatch("intersection of automata over different alphabets");

    Moves ma{ a }, mb{ b };
    Nfa result{ a.signature };
    std::map<pair<int, int>, int> ids;
    vector<pair<int, int>> pairs;

    auto intern = [&] (int p, int q) -> int {
        auto [it, inserted] = ids.emplace(pair{ p, q }, int(pairs.size()));
        if (inserted) {
            pairs.emplace_back(p, q);
            result.add_state("(" + a.state_names[p] + "," + b.state_names[q] + ")");
            if (ma.terminal[p] && mb.terminal[q])
                result.terminals.push_back(it->second);
        }
        return it->second;
    };

    for (auto p : a.initials)
        for (auto q : b.initials)
            result.initials.push_back(intern(p, q));

    for (int s = 0 ; s < int(pairs.size()) ; ++s) {
        auto [p, q] = pairs[s];
        for (auto p2 : ma.eps[p])
            result.add_transition(s, epsilon, intern(p2, q));
        for (auto q2 : mb.eps[q])
            result.add_transition(s, epsilon, intern(p, q2));
        for (auto & [l, p2] : ma.out[p]) {
            auto it = std::lower_bound(mb.out[q].begin(), mb.out[q].end(), pair{ l, std::numeric_limits<int>::min() });
            for ( ; it != mb.out[q].end() && it->first == l ; ++it)
                result.add_transition(s, l, intern(p2, it->second));
        }
    }

    result.normalise();
    return result;
}

auto catdual::is_empty(const Nfa & nfa) -> EmptinessResult
{
    Moves moves{ nfa };
    auto dist = moves.distance_to_accept();
    auto current = moves.closure(nfa.initials);
    int remaining = min_distance(current, dist);
    if (remaining == std::numeric_limits<int>::max())
        return EmptinessResult{ true, std::nullopt };

    Word witness;
    auto alphabet = sigma2_alphabet(nfa.signature);
    while (remaining > 0) {
        for (int l = 0 ; l < int(alphabet.size()) ; ++l) {
            auto next = moves.step(current, l);
            if (min_distance(next, dist) == remaining - 1) {
                witness.push_back(alphabet[l]);
                current = std::move(next);
                --remaining;
                break;
            }
        }
    }
    return EmptinessResult{ false, witness };
}

auto catdual::structure_to_nfa(const Structure & s) -> Nfa
{
    auto & sig = s.signature();
    Nfa result{ sig };
    result.state_names = s.elements();
    for (int e = 0 ; e < s.size() ; ++e) {
        result.initials.push_back(e);
        result.terminals.push_back(e);
    }
    for (int r = 0 ; r < sig.size() ; ++r)
        for (auto & t : s.tuples(r))
            for (int i = 1 ; i <= sig.arity(r) ; ++i)
                for (int j = 1 ; j <= sig.arity(r) ; ++j)
                    result.add_transition(t[i - 1], letter_index(sig, Letter{ r, i, j }), t[j - 1]);
    result.normalise();
    return result;
}

auto catdual::accepts(const Nfa & nfa, const Word & w) -> bool
{
    Moves moves{ nfa };
    auto current = moves.closure(nfa.initials);
    for (auto & letter : w) {
        current = moves.step(current, letter_index(nfa.signature, letter));
        if (current.empty())
            return false;
    }
    return moves.any_terminal(current);
}

auto catdual::accepts(const Dfa & dfa, const Word & w) -> bool
{
    int state = dfa.start;
    for (auto & letter : w)
        state = dfa.next(state, letter_index(dfa.signature, letter));
    return dfa.terminal[state];
}

auto catdual::for_each_accepted(const Nfa & nfa, int max_length, const function<bool (const Word &)> & callback) -> void
{
    Moves moves{ nfa };
    auto dist = moves.distance_to_accept();
    auto alphabet = sigma2_alphabet(nfa.signature);
    Word word;
    bool stopped = false;

    function<void (const vector<int> &, int)> extend = [&] (const vector<int> & states, int length) {
        if (stopped || min_distance(states, dist) > length - int(word.size()))
            return;
        if (int(word.size()) == length) {
            if (moves.any_terminal(states) && ! callback(word))
                stopped = true;
            return;
        }
        for (int l = 0 ; l < int(alphabet.size()) && ! stopped ; ++l) {
            auto next = moves.step(states, l);
            if (next.empty())
                continue;
            word.push_back(alphabet[l]);
            extend(next, length);
            word.pop_back();
        }
    };

    auto start = moves.closure(nfa.initials);
    for (int length = 0 ; length <= max_length && ! stopped ; ++length)
        extend(start, length);
}

auto catdual::enumerate_accepted(const Nfa & nfa, int max_length) -> vector<Word>
{
    vector<Word> result;
    for_each_accepted(nfa, max_length, [&] (const Word & w) { result.push_back(w); return true; });
    return result;
}

auto catdual::enumerate_accepted(const Dfa & dfa, int max_length) -> vector<Word>
{
    return enumerate_accepted(dfa_to_nfa(dfa), max_length);
}

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
}

auto catdual::parse_nfa(string_view text) -> Nfa
{
    std::istringstream in{ string(text) };
    string line;
    int number = 0;
    bool header = false;
    optional<Nfa> result;
    std::map<string, int> states;

    auto state = [&] (const string & name) -> int {
        auto it = states.find(name);
        if (it == states.end())
            throw ParseError("undeclared state " + name, number);
        return it->second;
    };

    while (std::getline(in, line)) {
        ++number;
        auto hash = line.find('#');
        auto body = hash == string::npos ? line : line.substr(0, hash);
        auto words = split_words(body);
        if (words.empty())
            continue;

        if (! header) {
            if (words.size() != 1 || words[0] != "nfa")
                throw ParseError("expected 'nfa' header", number);
            header = true;
            continue;
        }
        if (! result) {
            if (words[0] != "alphabet-signature")
                throw ParseError("expected 'alphabet-signature' after the header", number);
            result.emplace(parse_signature_spec(body.substr(body.find("alphabet-signature") + 18), number));
            continue;
        }

        if (words[0] == "states") {
            for (size_t i = 1 ; i < words.size() ; ++i) {
                if (states.count(words[i]))
                    throw ParseError("duplicate state " + words[i], number);
                states.emplace(words[i], result->add_state(words[i]));
            }
        }
        else if (words[0] == "initial" || words[0] == "terminal") {
            auto & target = words[0] == "initial" ? result->initials : result->terminals;
            for (size_t i = 1 ; i < words.size() ; ++i)
                target.push_back(state(words[i]));
        }
        else if (words[0] == "trans") {
            if (words.size() != 4)
                throw ParseError("expected 'trans FROM NAME[i,j] TO'", number);
            std::size_t pos = 0;
            Letter letter;
            try {
                letter = parse_letter_at(result->signature, words[2], pos);
            }
            catch (const ParseError & e) {
                throw ParseError(e.what(), number);
            }
            if (pos != words[2].size())
                throw ParseError("trailing characters after letter " + words[2], number);
            result->add_transition(state(words[1]), letter_index(result->signature, letter), state(words[3]));
        }
        else if (words[0] == "etrans") {
            if (words.size() != 3)
                throw ParseError("expected 'etrans FROM TO'", number);
            result->add_transition(state(words[1]), epsilon, state(words[2]));
        }
        else
            throw ParseError("unknown directive '" + words[0] + "'", number);
    }

    if (! result)
        throw ParseError("incomplete automaton file");
    result->normalise();
    return std::move(*result);
}

auto catdual::write_nfa(const Nfa & nfa) -> string
{
    auto alphabet = sigma2_alphabet(nfa.signature);
    string result = "nfa\nalphabet-signature " + format_signature(nfa.signature) + "\nstates";
    for (auto & s : nfa.state_names)
        result += " " + s;
    result += "\ninitial";
    for (auto s : nfa.initials)
        result += " " + nfa.state_names[s];
    result += "\nterminal";
    for (auto s : nfa.terminals)
        result += " " + nfa.state_names[s];
    result += "\n";
    for (auto & t : nfa.transitions)
        if (t.label == epsilon)
            result += "etrans " + nfa.state_names[t.from] + " " + nfa.state_names[t.to] + "\n";
        else
            result += "trans " + nfa.state_names[t.from] + " " + format_letter(nfa.signature, alphabet[t.label])
                + " " + nfa.state_names[t.to] + "\n";
    return result;
}

auto catdual::nfa_to_json(const Nfa & nfa) -> nlohmann::json
{
    auto alphabet = sigma2_alphabet(nfa.signature);
    auto sig = nlohmann::json::array();
    for (auto & r : nfa.signature.relations())
        sig.push_back({ r.name, r.arity });

    auto names = [&] (const vector<int> & states) {
        auto a = nlohmann::json::array();
        for (auto s : states)
            a.push_back(nfa.state_names[s]);
        return a;
    };

    auto trans = nlohmann::json::array(), etrans = nlohmann::json::array();
    for (auto & t : nfa.transitions)
        if (t.label == epsilon)
            etrans.push_back({ nfa.state_names[t.from], nfa.state_names[t.to] });
        else
            trans.push_back({ nfa.state_names[t.from], format_letter(nfa.signature, alphabet[t.label]), nfa.state_names[t.to] });

    return { { "alphabet-signature", sig }, { "states", nfa.state_names }, { "initial", names(nfa.initials) },
        { "terminal", names(nfa.terminals) }, { "trans", trans }, { "etrans", etrans } };
}

auto catdual::write_dfa(const Dfa & dfa) -> string
{
    string comments;
    for (int s = 0 ; s < int(dfa.members.size()) ; ++s) {
        comments += "# " + dfa.state_names[s] + " = {";
        for (size_t i = 0 ; i < dfa.members[s].size() ; ++i)
            comments += (i ? "," : "") + to_string(dfa.members[s][i]);
        comments += "}\n";
    }
    return comments + write_nfa(dfa_to_nfa(dfa));
}
