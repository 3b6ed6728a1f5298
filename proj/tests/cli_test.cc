/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include "oracles.hh"

#include <catdual/homomorphism.hh>
#include <catdual/structure_io.hh>

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <sys/wait.h>

using namespace catdual;

using std::string;

namespace
{
    struct Run
    {
        int code;
        string out, err;
    };

    auto data(const string & name) -> string
    {
        return string(CATDUAL_TEST_DATA) + "/" + name;
    }

    auto slurp(const string & path) -> string
    {
        std::ifstream f{ path };
        std::stringstream s;
        s << f.rdbuf();
        return s.str();
    }

    auto run(const string & args) -> Run
    {
        auto err_path = std::filesystem::temp_directory_path() / ("catdual_cli_" + std::to_string(::getpid()) + ".err");
        string command = string(CATDUAL_BINARY) + " " + args + " 2>" + err_path.string();
        Run result{ -1, "", "" };
        FILE * pipe = ::popen(command.c_str(), "r");
        if (! pipe)
            return result;
        char buffer[4096];
        std::size_t n;
        while ((n = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0)
            result.out.append(buffer, n);
        int status = ::pclose(pipe);
        result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        result.err = slurp(err_path.string());
        std::filesystem::remove(err_path);
        return result;
    }

    auto expect_error_line(const Run & r, const string & category)
    {
        auto first = r.err.substr(0, r.err.find('\n'));
        EXPECT_TRUE(std::regex_match(first, std::regex("error: [a-z-]+: .+"))) << first;
        EXPECT_EQ(first.substr(0, 8 + category.size()), "error: " + category + ":") << first;
        EXPECT_TRUE(r.out.empty());
    }
}

TEST(Cli, DecodeListedWord)
{
    auto r = run("decode \"R[3,3] S[2,2] S[1,3] S[2,3] P[1,1]\" --signature " + data("fig1.sig"));
    ASSERT_EQ(r.code, 0) << r.err;
    auto t = parse_structure(r.out);
    EXPECT_TRUE(is_isomorphic(t, parse_structure(slurp(data("fig1.str")))));
}

TEST(Cli, HomNo)
{
    auto r = run("hom " + data("p3.str") + " " + data("t2.str"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "NO\n");
}

TEST(Cli, HomYesWithWitness)
{
    auto r = run("hom " + data("t2.str") + " " + data("p3.str"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "YES\nu -> a\nv -> b\n");
}

TEST(Cli, Check)
{
    EXPECT_EQ(run("check " + data("t2.str")).out, "CATERPILLAR-DUALITY: YES\n");
    EXPECT_EQ(run("check " + data("k2.str")).out, "CATERPILLAR-DUALITY: NO\n");
    EXPECT_EQ(run("check --path " + data("t2.str")).out, "PATH-DUALITY: YES\n");
}

TEST(Cli, CheckEmitsC)
{
    auto path = (std::filesystem::temp_directory_path() / ("catdual_c_" + std::to_string(::getpid()) + ".str")).string();
    auto r = run("check " + data("t2.str") + " --emit-c " + path);
    ASSERT_EQ(r.code, 0);
    auto c = parse_structure(slurp(path));
    std::filesystem::remove(path);
    EXPECT_EQ(c.name(), "C");
    EXPECT_TRUE(find_homomorphism(c, parse_structure(slurp(data("t2.str")))));
}

TEST(Cli, Iso)
{
    EXPECT_EQ(run("iso " + data("t2.str") + " " + data("t2.str")).out, "YES\n");
    EXPECT_EQ(run("iso " + data("t2.str") + " " + data("k2.str")).out, "NO\n");
}

TEST(Cli, Core)
{
    auto r = run("core " + data("p3.str"));
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(parse_structure(r.out).size(), 3);
}

TEST(Cli, Classify)
{
    auto r = run("classify " + data("fig1.str"));
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out,
            "tree: yes\npath: no\ncaterpillar: yes\n"
            "leaves: a b d e f g i k\nnon-leaves: c h j\n"
            "pendant-blocks: R(a,b,c,d) S(e,c,f) P(j,k)\nnon-pendant-blocks: S(c,g,h) S(i,h,j)\n");
    EXPECT_EQ(run("classify " + data("spider.str")).out.substr(0, 35), "tree: yes\npath: no\ncaterpillar: no\n");
}

TEST(Cli, Encode)
{
    EXPECT_EQ(run("encode " + data("fig1.str")).out, "R[3,3] S[2,2] S[1,3] S[2,3] P[1,1]\n");
    EXPECT_EQ(run("encode --count " + data("fig1.str")).out, "28\n");
    auto all = run("encode --all-words " + data("t2.str"));
    EXPECT_EQ(all.out, "E[1,1]\nE[1,2]\nE[2,1]\nE[2,2]\n");
}

TEST(Cli, Dualize)
{
    auto r = run("dualize --regex \"E[1,2] E[1,2]\" --signature " + data("digraph.sig"));
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "signature E/2\nstructure D\nelements {q0} {q0,q1} {q0,q2} {q0,q1,q2}\ntuple E {q0,q1} {q0,q1,q2}\n");

    auto cored = run("dualize --core --regex \"E[1,2] E[1,2]\" --signature " + data("digraph.sig"));
    EXPECT_TRUE(is_isomorphic(parse_structure(cored.out), parse_structure(slurp(data("t2.str")))));

    auto nfa = run("dualize --nfa-file " + data("two_edge.nfa"));
    EXPECT_EQ(nfa.code, 0);
    auto datalog = run("dualize --datalog " + data("p2walk.dl") + " --signature " + data("digraph.sig") + " --core");
    EXPECT_EQ(datalog.out, cored.out);
}

TEST(Cli, Verify)
{
    auto ok = run("verify --regex \"E[1,2] E[1,2]\" --signature " + data("digraph.sig") + " --max-size 3 --jobs 3");
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(ok.out, "OK\n");

    auto bad = run("verify --regex \"E[1,2] E[1,2]\" --signature " + data("digraph.sig") + " --dual " + data("k2.str"));
    EXPECT_EQ(bad.code, 0);
    EXPECT_EQ(bad.out.substr(0, 15), "COUNTEREXAMPLE\n");
    EXPECT_NE(bad.out.find("obstruction: E[1,2] E[1,2]\n"), string::npos);
}

TEST(Cli, Datalog)
{
    auto r = run("datalog run " + data("p2walk.dl") + " " + data("p3.str"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "GOAL: YES\nr1: a b c\nr2: b c\nr3: c\nderivation: E[1,2] E[1,2]\n");
    EXPECT_EQ(run("datalog run --naive " + data("p2walk.dl") + " " + data("t2.str")).out, "GOAL: NO\nr1: u v\nr2: v\nr3:\n");

    auto n = run("datalog nfa " + data("p2walk.dl") + " --signature " + data("digraph.sig"));
    EXPECT_EQ(n.out,
            "nfa\nalphabet-signature E/2\nstates r1 r2 r3\ninitial r1\nterminal r3\n"
            "trans r1 E[1,2] r2\ntrans r2 E[1,2] r3\n");
}

TEST(Cli, JsonEverywhere)
{
    const string sig = " --signature " + data("digraph.sig");
    for (auto & args : {
            "hom " + data("t2.str") + " " + data("p3.str"),
            "iso " + data("t2.str") + " " + data("k2.str"),
            "core " + data("p3.str"),
            "classify " + data("fig1.str"),
            "decode \"E[1,2] E[2,1]\"" + sig,
            "encode " + data("fig1.str"),
            "encode --count " + data("fig1.str"),
            "dualize --regex \"E[1,2] E[1,2]\"" + sig,
            "check " + data("t2.str"),
            "verify --regex \"E[1,2]\"" + sig,
            "datalog run " + data("p2walk.dl") + " " + data("p3.str"),
            "datalog nfa " + data("p2walk.dl") + sig }) {
        auto r = run(args + " --json");
        ASSERT_EQ(r.code, 0) << args << "\n" << r.err;
        auto j = nlohmann::json::parse(r.out);
        EXPECT_TRUE(j.contains("answer")) << args;
        EXPECT_TRUE(j.contains("witness")) << args;
        EXPECT_TRUE(j.contains("stats")) << args;
    }
    auto hom = nlohmann::json::parse(run("hom " + data("t2.str") + " " + data("p3.str") + " --json").out);
    EXPECT_EQ(hom["answer"], "YES");
    EXPECT_EQ(hom["witness"]["v"], "b");
}

TEST(Cli, Deterministic)
{
    for (auto & args : {
            "dualize --datalog " + data("p2walk.dl") + " --signature " + data("digraph.sig"),
            "encode --all-words " + data("fig1.str"),
            "verify --regex \"E[1,2] E[2,1]\" --signature " + data("digraph.sig") + " --dual " + data("t2.str") + " --jobs 4",
            "check " + data("k2.str") + " --json" }) {
        auto a = run(args), b = run(args);
        EXPECT_EQ(a.out, b.out) << args;
        EXPECT_FALSE(a.out.empty()) << args;
    }
}

TEST(Cli, Errors)
{
    auto parse = run("hom " + data("bad_arity.str") + " " + data("t2.str"));
    EXPECT_EQ(parse.code, 2);
    expect_error_line(parse, "parse");

    auto missing = run("hom /nonexistent/file.str " + data("t2.str"));
    EXPECT_EQ(missing.code, 2);
    expect_error_line(missing, "parse");

    auto mismatch = run("hom " + data("fig1.str") + " " + data("t2.str"));
    EXPECT_EQ(mismatch.code, 2);
    expect_error_line(mismatch, "signature");

    auto empty = run("dualize --regex EPS --signature " + data("digraph.sig"));
    EXPECT_EQ(empty.code, 2);
    expect_error_line(empty, "empty-dual");

    auto guard = run("check " + data("fig1.str") + " --max-subsets 100");
    EXPECT_EQ(guard.code, 3);
    expect_error_line(guard, "guard");

    auto verify_guard = run("verify --regex \"E[1,2]\" --signature " + data("digraph.sig") + " --max-size 6");
    EXPECT_EQ(verify_guard.code, 3);
    expect_error_line(verify_guard, "guard");

    auto no_language = run("dualize --signature " + data("digraph.sig"));
    EXPECT_EQ(no_language.code, 2);
    expect_error_line(no_language, "validation");

    auto no_signature = run("decode \"E[1,2]\"");
    EXPECT_EQ(no_signature.code, 2);
    expect_error_line(no_signature, "validation");

    auto usage = run("frobnicate");
    EXPECT_EQ(usage.code, 2);
    expect_error_line(usage, "usage");

    auto bad_word = run("decode \"E[1,3]\" --signature " + data("digraph.sig"));
    EXPECT_EQ(bad_word.code, 2);
    expect_error_line(bad_word, "parse");

    auto bad_program = run("datalog nfa " + data("fig1.str") + " --signature " + data("digraph.sig"));
    EXPECT_EQ(bad_program.code, 2);
}
