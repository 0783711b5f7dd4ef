#include <doctest.h>

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "symfix/cli.hpp"
#include "symfix/report.hpp"

using namespace symfix;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
    const fs::path p = fs::temp_directory_path() / "symfix_cli_tests";
    fs::create_directories(p);
    return p;
}

// Node and edge statements of a DOT document written by to_dot.
std::pair<std::size_t, std::size_t> dot_counts(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t nodes = 0, edges = 0;
    while (std::getline(in, line)) {
        if (line.size() < 4 || line.rfind("  n", 0) != 0 || !std::isdigit(static_cast<unsigned char>(line[3]))) continue;
        if (line.find(" -> ") != std::string::npos) ++edges;
        else ++nodes;
    }
    return {nodes, edges};
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("neighbors") {
        const Run r = run({"neighbors", "--sigma", "0", "--n", "4"});
        CHECK(r.code == kExitOk);
        CHECK(r.out == "00\n010\n0110\n");
        const Run j = run({"neighbors", "--sigma", "11", "--n", "7", "--format", "json"});
        REQUIRE(j.code == kExitOk);
        const auto doc = nlohmann::json::parse(j.out);
        CHECK(doc["neighbors"].size() == 5);
        CHECK(run({"neighbors", "--sigma", "10", "--n", "5"}).code == kExitValidation);
        CHECK(run({"neighbors", "--sigma", "0", "--n", "99"}).code == kExitUsage);
        CHECK(run({"neighbors", "--sigma", "0"}).code == kExitUsage);
    }

    TEST_CASE("usage errors") {
        CHECK(run({}).code == kExitUsage);
        CHECK(run({"frobnicate"}).code == kExitUsage);
        CHECK(run({"--help"}).code == kExitOk);
        CHECK(run({"search", "--n", "2"}).code == kExitUsage);
        CHECK(run({"search", "--n", "5", "--mode", "fast"}).code == kExitUsage);
        CHECK(run({"search", "--n", "5", "--complement-dedup"}).code == kExitValidation);
        CHECK(run({"table", "--max-n", "30"}).code == kExitUsage);
    }

    TEST_CASE("search summary and budget exit") {
        const Run r = run({"search", "--n", "5", "--mode", "exhaustive"});
        CHECK(r.code == kExitOk);
        CHECK(r.out.find("dominant_sequences=2") != std::string::npos);
        CHECK(r.out.find("(2,2,3,3,4)") != std::string::npos);
        const Run b = run({"search", "--n", "12", "--budget-nodes", "50"});
        CHECK(b.code == kExitBudget);
        CHECK(b.out.find("complete=no") != std::string::npos);
    }

    TEST_CASE("json and dot outputs agree") {
        const fs::path dir = scratch_dir();
        const std::string js = (dir / "s6.json").string(), dot = (dir / "s6.dot").string();
        const Run r = run({"search", "--n", "6", "--mode", "exhaustive", "--out", js, "--dot", dot, "--dot-scope", "full"});
        REQUIRE(r.code == kExitOk);
        const auto doc = nlohmann::json::parse(read_file(js));
        const std::string text = read_file(dot);
        CHECK(doc["n"] == 6);
        CHECK(doc["mode"] == "exhaustive");
        CHECK(doc["complete"] == true);
        const auto [nodes, edges] = dot_counts(text);
        CHECK(doc["nodes"].size() == nodes);
        CHECK(doc["edges"].size() == edges);
        CHECK(doc["edges"].size() + 1 == doc["nodes"].size());
        CHECK(doc["nodes"].size() == 812);
        CHECK(doc["dominant_sequences"].size() == 2);

        const auto manifest = nlohmann::json::parse(read_file(js + ".manifest.json"));
        CHECK(manifest["command"] == "search");
        CHECK(manifest["output_digests"][js] == file_sha256(js));
        CHECK(manifest["engine_version"] == engine_version());
    }

    TEST_CASE("stdout json is thread independent") {
        const Run a = run({"search", "--n", "9", "--out", "-", "--threads", "1"});
        const Run b = run({"search", "--n", "9", "--out", "-", "--threads", "3"});
        REQUIRE(a.code == kExitOk);
        CHECK(a.out == b.out);
        CHECK(nlohmann::json::parse(a.out)["dominant_sequences"].size() == 4);
    }

    TEST_CASE("table against the reference csv") {
        const fs::path dir = scratch_dir();
        const std::string ref = (dir / "ref.csv").string();
        write_file(ref, "n,count\n3,1\n4,1\n5,2\n6,2\n");
        const Run ok = run({"table", "--max-n", "6", "--compare", ref});
        CHECK(ok.code == kExitOk);
        CHECK(ok.out.rfind("n,count\n3,1\n4,1\n5,2\n6,2\n", 0) == 0);
        CHECK(ok.out.find("all rows match") != std::string::npos);
        write_file(ref, "n,count\n3,1\n4,2\n");
        const Run bad = run({"table", "--max-n", "4", "--compare", ref});
        CHECK(bad.code == kExitMismatch);
        CHECK(bad.out.find("MISMATCH") != std::string::npos);
    }

    TEST_CASE("optimize") {
        const Run u = run({"optimize", "--p", "0.2,0.2,0.2,0.2,0.2"});
        CHECK(u.code == kExitOk);
        CHECK(u.out.find("(2,2,3,3,4)") != std::string::npos);
        CHECK(u.out.find("2.8") != std::string::npos);
        const fs::path dir = scratch_dir();
        const std::string probs = (dir / "p.csv").string();
        write_file(probs, "p\n0.7\n0.1\n0.1\n0.1\n");
        const Run f = run({"optimize", "--probs", probs});
        CHECK(f.code == kExitOk);
        CHECK(f.out.find("(1,2,3,4)") != std::string::npos);
        CHECK(run({"optimize", "--p", "0.5,0.4"}).code == kExitValidation);
        CHECK(run({"optimize", "--n", "4", "--p", "0.5,0.5"}).code == kExitValidation);
    }

    TEST_CASE("oracle, verify, cluster, conjecture") {
        const Run o = run({"oracle", "--n", "5"});
        CHECK(o.code == kExitOk);
        CHECK(o.out.find("codes=2671") != std::string::npos);
        CHECK(run({"oracle", "--n", "9"}).code == kExitUsage);
        const Run v = run({"verify", "--n", "6"});
        CHECK(v.code == kExitOk);
        CHECK(v.out.find("search == oracle") != std::string::npos);
        const Run c = run({"cluster", "--n", "8", "--count-prefixes"});
        CHECK(c.code == kExitOk);
        CHECK(c.out.find("prefix palindromes: 10") != std::string::npos);
        CHECK(run({"cluster", "--n", "7"}).code == kExitUsage);
        const Run j = run({"conjecture", "--n", "4"});
        CHECK(j.code == kExitOk);
        CHECK(j.out.find("findings=0") != std::string::npos);
    }

    TEST_CASE("node budget from the environment") {
        ::setenv("SYMFIX_BUDGET_NODES", "40", 1);
        const Run r = run({"search", "--n", "12"});
        ::unsetenv("SYMFIX_BUDGET_NODES");
        CHECK(r.code == kExitBudget);
        CHECK(r.out.find("reached=40 ") != std::string::npos);
    }
}
