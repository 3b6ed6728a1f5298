/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <catdual/datalog.hh>
#include <catdual/duality.hh>
#include <catdual/error.hh>
#include <catdual/homomorphism.hh>
#include <catdual/structure_io.hh>
#include <catdual/words.hh>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace catdual;

using nlohmann::json;

using std::cerr;
using std::cout;
using std::optional;
using std::string;
using std::vector;

namespace
{
    struct Options
    {
        bool json_output = false;
        string signature_file;

        string first, second;
        string word;

        int core_bound = default_core_bound;
        int word_bound = default_word_block_bound;
        bool all_words = false, count_only = false;

        string regex, nfa_file, datalog_file, dual_file;
        bool core_pass = false;
        int max_states = default_max_dfa_states;
        std::uint64_t max_subsets = default_subset_guard;

        bool path = false;
        string emit_c;

        int max_size = 3;
        int jobs = 1;
        std::uint64_t enumeration_guard = default_enumeration_guard;

        bool naive = false;
    };

    // One answer per invocation: text goes to stdout as is, json is the
    // {"answer","witness","stats"} wrapper.
    struct Output
    {
        string text;
        json answer, witness = nullptr, stats = json::object();
    };

    auto load_structure(const string & path) -> Structure
    {
        return parse_structure(read_file(path));
    }

    auto load_signature(const Options & o) -> optional<Signature>
    {
        if (o.signature_file.empty())
            return std::nullopt;
        return parse_signature_file(read_file(o.signature_file));
    }

    auto require_signature(const Options & o, const string & why) -> Signature
    {
        auto sig = load_signature(o);
        if (! sig)
            throw ValidationError("--signature is required " + why);
        return *sig;
    }

    auto mapping_json(const Structure & source, const Structure & target, const HomWitness & h) -> json
    {
        auto result = json::object();
        for (int e = 0 ; e < source.size() ; ++e)
            result[source.element_name(e)] = target.element_name(h.mapping[e]);
        return result;
    }

    auto mapping_text(const Structure & source, const Structure & target, const HomWitness & h) -> string
    {
        string result;
        for (int e = 0 ; e < source.size() ; ++e)
            result += source.element_name(e) + " -> " + target.element_name(h.mapping[e]) + "\n";
        return result;
    }

    auto words_json(const Signature & sig, const vector<Word> & words) -> json
    {
        auto result = json::array();
        for (auto & w : words)
            result.push_back(format_word(sig, w));
        return result;
    }

    struct Language
    {
        Nfa nfa;
        Signature signature;
    };

    auto load_language(const Options & o) -> Language
    {
        int given = ! o.regex.empty() + ! o.nfa_file.empty() + ! o.datalog_file.empty();
        if (given != 1)
            throw ValidationError("give exactly one of --regex, --nfa-file, --datalog");

        if (! o.nfa_file.empty()) {
            auto nfa = parse_nfa(read_file(o.nfa_file));
            if (auto sig = load_signature(o) ; sig && ! (*sig == nfa.signature))
                throw SignatureMismatch("--signature disagrees with the automaton's alphabet-signature");
            auto sig = nfa.signature;
            return Language{ std::move(nfa), std::move(sig) };
        }

        auto sig = require_signature(o, "with --regex and --datalog");
        if (! o.regex.empty())
            return Language{ regex_to_nfa(o.regex, sig), sig };
        return Language{ program_to_nfa(parse_program(read_file(o.datalog_file), sig)), sig };
    }

    auto limits_of(const Options & o) -> DualityLimits
    {
        return DualityLimits{ o.max_states, o.max_subsets };
    }

    auto run_hom(const Options & o) -> Output
    {
        auto a = load_structure(o.first), b = load_structure(o.second);
        auto h = find_homomorphism(a, b);
        Output out;
        out.answer = h ? "YES" : "NO";
        out.text = h ? "YES\n" + mapping_text(a, b, *h) : "NO\n";
        if (h)
            out.witness = mapping_json(a, b, *h);
        out.stats = { { "source_elements", a.size() }, { "target_elements", b.size() } };
        return out;
    }

    auto run_iso(const Options & o) -> Output
    {
        auto a = load_structure(o.first), b = load_structure(o.second);
        if (! (a.signature() == b.signature()))
            throw SignatureMismatch("structures have different signatures");
        bool iso = is_isomorphic(a, b);
        Output out;
        out.answer = iso ? "YES" : "NO";
        out.text = iso ? "YES\n" : "NO\n";
        out.stats = { { "elements", { a.size(), b.size() } } };
        return out;
    }

    auto run_core(const Options & o) -> Output
    {
        auto a = load_structure(o.first);
        auto c = core(a, o.core_bound);
        Output out;
        out.answer = structure_to_json(c);
        out.text = write_structure(c);
        out.stats = { { "elements", a.size() }, { "core_elements", c.size() } };
        return out;
    }

    auto run_classify(const Options & o) -> Output
    {
        auto a = load_structure(o.first);
        auto c = classify(a);
        auto inc = incidence_graph(a);
        bool tree = is_tree(a), path = is_path(a), caterpillar = is_caterpillar(a);

        auto elements = [&] (const vector<int> & es) {
            vector<string> names;
            for (auto e : es)
                names.push_back(a.element_name(e));
            return names;
        };
        auto blocks = [&] (const vector<int> & bs) {
            vector<string> names;
            for (auto b : bs)
                names.push_back(format_block(a, inc.blocks[b]));
            return names;
        };
        auto line = [] (const string & label, const vector<string> & items) {
            string result = label + ":";
            for (auto & i : items)
                result += " " + i;
            return result + "\n";
        };
        auto yes = [] (bool b) { return string(b ? "yes" : "no"); };

        Output out;
        out.answer = { { "tree", tree }, { "path", path }, { "caterpillar", caterpillar } };
        out.witness = {
            { "leaves", elements(c.leaves) }, { "non_leaves", elements(c.non_leaves) },
            { "pendant_blocks", blocks(c.pendant_blocks) }, { "non_pendant_blocks", blocks(c.non_pendant_blocks) } };
        out.stats = { { "elements", a.size() }, { "blocks", inc.blocks.size() }, { "incidence_edges", inc.edges.size() } };
        out.text = "tree: " + yes(tree) + "\npath: " + yes(path) + "\ncaterpillar: " + yes(caterpillar) + "\n"
            + line("leaves", elements(c.leaves)) + line("non-leaves", elements(c.non_leaves))
            + line("pendant-blocks", blocks(c.pendant_blocks)) + line("non-pendant-blocks", blocks(c.non_pendant_blocks));
        return out;
    }

    auto run_decode(const Options & o) -> Output
    {
        auto sig = require_signature(o, "to decode a word");
        auto w = parse_word(sig, o.word);
        auto t = decode_word(sig, w);
        Output out;
        out.answer = structure_to_json(t);
        out.text = write_structure(t);
        out.stats = { { "letters", w.size() }, { "elements", t.size() } };
        return out;
    }

    auto run_encode(const Options & o) -> Output
    {
        auto a = load_structure(o.first);
        auto & sig = a.signature();
        Output out;
        if (o.all_words || o.count_only) {
            auto words = enumerate_words_of(a, o.word_bound);
            out.stats = { { "words", words.size() } };
            if (o.count_only) {
                out.answer = words.size();
                out.text = std::to_string(words.size()) + "\n";
            }
            else {
                out.answer = words_json(sig, words);
                for (auto & w : words)
                    out.text += format_word(sig, w) + "\n";
            }
            return out;
        }

        auto w = encode_canonical(a);
        out.answer = format_word(sig, w);
        out.text = format_word(sig, w) + "\n";
        out.stats = { { "letters", w.size() } };
        return out;
    }

    auto run_dualize(const Options & o) -> Output
    {
        auto language = load_language(o);
        auto result = dualize(language.nfa, language.signature, limits_of(o));
        auto dual = o.core_pass ? core(result.dual, o.core_bound) : result.dual;
        Output out;
        out.answer = structure_to_json(dual);
        out.text = write_structure(dual);
        out.stats = { { "nfa_states", language.nfa.state_count() }, { "dfa_states", result.source.state_count() },
            { "dual_elements", result.dual.size() }, { "output_elements", dual.size() } };
        return out;
    }

    auto run_check(const Options & o) -> Output
    {
        auto a = load_structure(o.first);
        auto check = o.path ? has_path_duality(a, limits_of(o)) : has_caterpillar_duality(a, limits_of(o));
        if (! o.emit_c.empty()) {
            std::ofstream f{ o.emit_c };
            f << write_structure(check.c);
            if (! f)
                throw ValidationError("cannot write " + o.emit_c);
        }

        string label = o.path ? "PATH-DUALITY" : "CATERPILLAR-DUALITY";
        Output out;
        out.answer = check.holds ? "YES" : "NO";
        out.text = label + ": " + (check.holds ? "YES" : "NO") + "\n";
        if (check.witness)
            out.witness = mapping_json(check.c, a, *check.witness);
        out.stats = { { "elements", a.size() }, { "c_elements", check.c.size() }, { "c_tuples", check.c.tuple_count() } };
        return out;
    }

    auto run_verify(const Options & o) -> Output
    {
        auto language = load_language(o);
        auto dual = o.dual_file.empty()
            ? dualize(language.nfa, language.signature, limits_of(o)).dual
            : load_structure(o.dual_file);
        auto v = verify_duality(language.nfa, language.signature, dual, o.max_size, o.jobs, o.enumeration_guard);

        Output out;
        out.stats = { { "checked", v.checked }, { "max_size", o.max_size }, { "dual_elements", dual.size() } };
        if (v.holds) {
            out.answer = "OK";
            out.text = "OK\n";
            return out;
        }

        auto & b = *v.counterexample;
        bool maps = *v.mismatch == Mismatch::MapsButObstructed;
        string kind = maps ? "maps-to-dual-but-obstructed" : "unobstructed-but-no-map-to-dual";
        out.answer = "COUNTEREXAMPLE";
        out.witness = { { "structure", structure_to_json(b) }, { "mismatch", kind } };
        out.text = "COUNTEREXAMPLE\nmismatch: " + kind + "\n";
        if (maps) {
            auto word = format_word(language.signature, *v.obstruction);
            out.witness["obstruction"] = word;
            out.witness["map_to_dual"] = mapping_json(b, dual, *v.map_to_dual);
            out.text += "obstruction: " + word + "\n";
        }
        out.text += write_structure(b);
        if (maps)
            out.text += mapping_text(b, dual, *v.map_to_dual);
        return out;
    }

    auto run_datalog_run(const Options & o) -> Output
    {
        auto b = load_structure(o.second);
        auto sig = load_signature(o).value_or(b.signature());
        auto p = parse_program(read_file(o.first), sig);
        auto r = evaluate(p, b, o.naive ? Evaluation::Naive : Evaluation::SemiNaive);

        Output out;
        out.answer = r.goal ? "YES" : "NO";
        out.text = string("GOAL: ") + (r.goal ? "YES" : "NO") + "\n";
        auto fixpoint = json::object();
        for (unsigned i = 0 ; i < p.idbs.size() ; ++i) {
            vector<string> names;
            for (auto e : r.fixpoint[i])
                names.push_back(b.element_name(e));
            fixpoint[p.idbs[i]] = names;
            out.text += p.idbs[i] + ":";
            for (auto & n : names)
                out.text += " " + n;
            out.text += "\n";
        }
        out.witness = { { "fixpoint", fixpoint } };
        if (r.derivation) {
            auto word = format_word(p.signature, *r.derivation);
            out.witness["derivation"] = word;
            out.text += "derivation: " + word + "\n";
        }
        out.stats = { { "idbs", p.idbs.size() }, { "rules", p.rules.size() }, { "elements", b.size() } };
        return out;
    }

    auto run_datalog_nfa(const Options & o) -> Output
    {
        auto sig = require_signature(o, "to read a program");
        auto nfa = program_to_nfa(parse_program(read_file(o.first), sig));
        Output out;
        out.answer = nfa_to_json(nfa);
        out.text = write_nfa(nfa);
        out.stats = { { "states", nfa.state_count() }, { "transitions", nfa.transitions.size() } };
        return out;
    }

    auto report(const string & category, const string & detail, int code) -> int
    {
        string line = detail;
        std::replace(line.begin(), line.end(), '\n', ' ');
        cerr << "error: " << category << ": " << line << "\n";
        return code;
    }
}

auto main(int argc, char * argv[]) -> int
{
    Options o;
    CLI::App app{ "Caterpillar dualities: structures, words, automata, Datalog and duals" };
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", o.json_output, "Wrap the answer as JSON");
    app.add_option("--signature", o.signature_file, "File whose signature line names the relations");

    auto add_limits = [&] (CLI::App * c) {
        c->add_option("--max-states", o.max_states, "Limit on determinized states");
        c->add_option("--max-subsets", o.max_subsets, "Limit on state subsets scanned by the dual construction");
    };
    auto add_language = [&] (CLI::App * c) {
        c->add_option("--regex", o.regex, "Regular expression over NAME[i,j] letters");
        c->add_option("--nfa-file", o.nfa_file, "Automaton in nfa text format");
        c->add_option("--datalog", o.datalog_file, "Caterpillar Datalog program");
    };

    vector<std::pair<CLI::App *, std::function<Output (const Options &)>>> commands;

    auto hom = app.add_subcommand("hom", "Is there a homomorphism from A to B?");
    hom->add_option("A", o.first)->required();
    hom->add_option("B", o.second)->required();
    commands.emplace_back(hom, run_hom);

    auto iso = app.add_subcommand("iso", "Are A and B isomorphic?");
    iso->add_option("A", o.first)->required();
    iso->add_option("B", o.second)->required();
    commands.emplace_back(iso, run_iso);

    auto core_cmd = app.add_subcommand("core", "Core of a small structure");
    core_cmd->add_option("A", o.first)->required();
    core_cmd->add_option("--bound", o.core_bound, "Largest universe to search");
    commands.emplace_back(core_cmd, run_core);

    auto classify_cmd = app.add_subcommand("classify", "Leaves, pendant blocks and tree shape");
    classify_cmd->add_option("A", o.first)->required();
    commands.emplace_back(classify_cmd, run_classify);

    auto decode = app.add_subcommand("decode", "Caterpillar described by a word");
    decode->add_option("WORD", o.word)->required();
    commands.emplace_back(decode, run_decode);

    auto encode = app.add_subcommand("encode", "Word describing a caterpillar");
    encode->add_option("A", o.first)->required();
    encode->add_flag("--all-words", o.all_words, "Every word that decodes to A");
    encode->add_flag("--count", o.count_only, "Only count those words");
    encode->add_option("--bound", o.word_bound, "Largest block count for --all-words");
    commands.emplace_back(encode, run_encode);

    auto dualize_cmd = app.add_subcommand("dualize", "Dual of a regular language");
    add_language(dualize_cmd);
    add_limits(dualize_cmd);
    dualize_cmd->add_flag("--core", o.core_pass, "Replace the dual by its core");
    dualize_cmd->add_option("--core-bound", o.core_bound, "Largest universe for --core");
    commands.emplace_back(dualize_cmd, run_dualize);

    auto check = app.add_subcommand("check", "Does A have caterpillar duality?");
    check->add_option("A", o.first)->required();
    check->add_flag("--path", o.path, "Decide path duality instead");
    check->add_option("--emit-c", o.emit_c, "Write C(A) to this file");
    add_limits(check);
    commands.emplace_back(check, run_check);

    auto verify = app.add_subcommand("verify", "Check a duality on every small structure");
    add_language(verify);
    add_limits(verify);
    verify->add_option("--dual", o.dual_file, "Candidate dual (default: the constructed one)");
    verify->add_option("--max-size", o.max_size, "Largest universe to enumerate")->check(CLI::PositiveNumber);
    verify->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    verify->add_option("--max-structures", o.enumeration_guard, "Limit on structures per universe size");
    commands.emplace_back(verify, run_verify);

    auto datalog = app.add_subcommand("datalog", "Caterpillar Datalog programs");
    datalog->require_subcommand(1);
    auto datalog_run = datalog->add_subcommand("run", "Evaluate a program on a structure");
    datalog_run->add_option("PROGRAM", o.first)->required();
    datalog_run->add_option("B", o.second)->required();
    datalog_run->add_flag("--naive", o.naive, "Naive instead of semi-naive iteration");
    commands.emplace_back(datalog_run, run_datalog_run);
    auto datalog_nfa = datalog->add_subcommand("nfa", "Automaton of a program");
    datalog_nfa->add_option("PROGRAM", o.first)->required();
    commands.emplace_back(datalog_nfa, run_datalog_nfa);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        return report("usage", e.what(), 2);
    }

    try {
        for (auto & [command, handler] : commands) {
            if (! command->parsed())
                continue;
            auto out = handler(o);
            if (o.json_output)
                cout << json{ { "answer", out.answer }, { "witness", out.witness }, { "stats", out.stats } }.dump(2) << "\n";
            else
                cout << out.text;
            return 0;
        }
        return report("usage", "no subcommand given", 2);
    }
    catch (const GuardExceeded & e) {
        return report(e.category(), e.what(), 3);
    }
    catch (const Error & e) {
        return report(e.category(), e.what(), 2);
    }
    catch (const std::exception & e) {
        return report("internal", e.what(), 1);
    }
}
