#include "fixtures.hpp"

#include "pcspan/generator.hpp"
#include "pcspan/greedy.hpp"
#include "pcspan/instance_io.hpp"
#include "pcspan/rcsp.hpp"
#include "pcspan/report_io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>

using namespace pcspan;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / "pcspan_cli_tests";
    fs::create_directories(dir);
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = std::string(PCSPAN_CLI) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string data(const std::string& name) { return std::string(PCSPAN_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("generator is deterministic and meets its regime") {
    for (auto regime : {Regime::Integer, Regime::Rational, Regime::RationalNegative}) {
        GeneratorParams p;
        p.n = 6;
        p.k = 4;
        p.m = 2;
        p.regime = regime;
        p.seed = 12;
        const auto a = generate_instance(p);
        CHECK(to_json(a) == to_json(generate_instance(p)));
        for (const auto& d : a.demands) CHECK(feasible_witness(a, d).has_value());
        if (regime == Regime::Integer) {
            for (const auto& e : a.edges) {
                CHECK(e.r.length >= 1);
                CHECK(e.r.length <= p.max_length);
                CHECK(denominator(e.r.length) == 1);
            }
        }
        CHECK_FALSE(has_negative_cycle(a));
    }
}

TEST_CASE("routing-controlled and hopset instances round-trip through JSON") {
    RcsParams rp;
    rp.seed = 4;
    const auto rcs = generate_rcs(rp);
    CHECK(to_json(parse_rcs(to_json(rcs))) == to_json(rcs));
    HopsetParams hp;
    hp.seed = 4;
    const auto hs = generate_hopset(hp);
    CHECK(to_json(parse_hopset(to_json(hs))) == to_json(hs));
}

TEST_CASE("solution reports parse back") {
    const auto inst = fixtures::three_vertex();
    const auto report = solve_pcs(inst, SolverConfig{});
    const auto sol = parse_solution(report_to_json(report));
    CHECK(sol.mode == "integer");
    CHECK(sol.edges == report.edges);
    CHECK(sol.cost == report.cost);
    CHECK_FALSE(sol.theta.has_value());
}

TEST_CASE("cli solves the three-vertex example and re-verifies the report") {
    const auto out = (scratch() / "three.report.json").string();
    REQUIRE(run("--mode pcs-int --instance " + data("three_vertex.json") + " --out " + out) == 0);
    const auto doc = nlohmann::json::parse(read_file(out));
    CHECK(doc["cost"] == "2/1");
    CHECK(run("--mode verify --instance " + data("three_vertex.json") + " --solution " + out) == 0);
    auto tampered = doc;
    tampered["edges"] = nlohmann::json::array({2});
    tampered["cost"] = "1/1";
    const auto bad = (scratch() / "three.tampered.json").string();
    write_file(bad, tampered.dump());
    CHECK(run("--mode verify --instance " + data("three_vertex.json") + " --solution " + bad) == 1);
}

TEST_CASE("cli exit codes") {
    CHECK(run("--mode pcs-int --instance " + data("bad_rational.json")) == 2);
    CHECK(run("--mode pcs-int --instance " + data("infeasible.json")) == 3);
    CHECK(run("--mode pcs-int --instance " + (scratch() / "missing.json").string()) == 2);
    CHECK(run("--mode nonsense") == 2);
    const auto out = (scratch() / "empty.report.json").string();
    REQUIRE(run("--mode pcs-int --instance " + data("no_demands.json") + " --out " + out) == 0);
    CHECK(nlohmann::json::parse(read_file(out))["cost"] == "0/1");
}

TEST_CASE("cli reductions and theta mode") {
    const auto dir = scratch();
    CHECK(run("--mode rcs --instance " + data("figure1_rcs.json") + " --out " + (dir / "rcs.json").string()) == 0);
    CHECK(nlohmann::json::parse(read_file((dir / "rcs.json").string()))["cost"] == "10/1");
    CHECK(run("--mode hopset --instance " + data("path4_hopset.json") + " --out " + (dir / "hs.json").string()) == 0);
    CHECK(run("--mode pcs-theta --instance " + data("figure2.json") + " --out " + (dir / "theta.json").string()) == 0);
    CHECK(run("--mode verify --instance " + data("figure2.json") + " --solution " + (dir / "theta.json").string()) == 0);
    CHECK(run("--mode junction --instance " + data("three_vertex.json") + " --out " + (dir / "j.json").string()) == 0);
    CHECK(nlohmann::json::parse(read_file((dir / "j.json").string()))["density"] == "2/1");
}

TEST_CASE("cli gen is byte-identical per seed") {
    const auto dir = scratch();
    const std::string args = " --mode gen --n 6 --k 3 --m 1 --tau 2 --regime rational-negative --seed 5 --out ";
    REQUIRE(run(args + (dir / "g1.json").string()) == 0);
    REQUIRE(run(args + (dir / "g2.json").string()) == 0);
    CHECK(read_file((dir / "g1.json").string()) == read_file((dir / "g2.json").string()));
    CHECK(run("--mode gen --regime cubic --out " + (dir / "g3.json").string()) == 2);
}

TEST_CASE("cli bench writes summaries with oracle ratios") {
    const auto dir = scratch() / "bench";
    fs::remove_all(dir);
    fs::create_directories(dir / "suite");
    auto three = nlohmann::ordered_json::parse(read_file(data("three_vertex.json")));
    three["oracle"] = true;
    write_file((dir / "suite" / "a_three.json").string(), three.dump());
    fs::copy_file(data("figure2.json"), dir / "suite" / "b_figure2.json");
    const std::string args = "--mode bench --workers 2 --suite " + (dir / "suite").string() + " --out ";
    REQUIRE(run(args + (dir / "out1").string()) == 0);
    REQUIRE(run(args + (dir / "out2").string()) == 0);
    const auto s1 = read_file((dir / "out1" / "bench_summary.json").string());
    CHECK(s1 == read_file((dir / "out2" / "bench_summary.json").string()));
    const auto doc = nlohmann::json::parse(s1);
    CHECK(doc["instances"][0]["ratio"] == "1/1");
    CHECK(doc["instances"][1]["ratio"].is_null());
    const auto csv = read_file((dir / "out1" / "bench_summary.csv").string());
    CHECK(csv.find("a_three.json,ok,1,2/1,2/1,1/1") != std::string::npos);
    CHECK(csv.find("b_figure2.json,ok,1,") != std::string::npos);
}
