#include "fixtures.hpp"

#include "pcspan/errors.hpp"
#include "pcspan/exact_oracle.hpp"
#include "pcspan/generator.hpp"
#include "pcspan/instance_io.hpp"
#include "pcspan/model.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace pcspan;

TEST_CASE("rational parsing and printing") {
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("-2")) == "-2/1");
    CHECK(to_string(parse_rational("0/5")) == "0/1");
    CHECK_THROWS_AS(parse_rational("3/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/"), ParseError);
    CHECK(floor_to_int(Rational(-3, 2)) == -2);
    CHECK(ceil_to_int(Rational(-3, 2)) == -1);
    CHECK(ceil_to_int(Rational(4, 2)) == 2);
}

TEST_CASE("walk resources are additive under concatenation") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GeneratorParams p;
        p.n = 5;
        p.m = 2;
        p.regime = seed % 2 ? Regime::Integer : Regime::RationalNegative;
        p.seed = seed;
        const auto inst = generate_instance(p);
        std::mt19937_64 rng(seed);
        const auto out = inst.out_edges();
        auto random_walk = [&](int start, int len) {
            Walk w{start, {}};
            int at = start;
            for (int i = 0; i < len && !out[at].empty(); ++i) {
                const int e = out[at][uniform_int(rng, 0, static_cast<std::int64_t>(out[at].size()) - 1)];
                w.edges.push_back(e);
                at = inst.edges[e].v;
            }
            return w;
        };
        const Walk a = random_walk(0, 4);
        const Walk b = random_walk(walk_end(a, inst), 5);
        CHECK(walk_resource(concat(a, b), inst) == walk_resource(a, inst) + walk_resource(b, inst));
    }
}

TEST_CASE("feasibility on the three-vertex example") {
    const auto inst = fixtures::three_vertex();
    const auto& d = inst.demands[0];
    CHECK(is_feasible(Walk{0, {0, 1}}, d, inst));
    CHECK_FALSE(is_feasible(Walk{0, {2}}, d, inst));
    CHECK_FALSE(is_theta_feasible(Walk{0, {2}}, d, inst, Rational(1, 10)));
    CHECK(is_theta_feasible(Walk{0, {2}}, d, inst, Rational(1, 2)));
    CHECK(theta_length_bound(Rational(-4), Rational(1, 2)) == Rational(-2));
    CHECK(theta_length_bound(Rational(4), Rational(1, 2)) == Rational(6));
}

TEST_CASE("feasible walks are theta-feasible") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        GeneratorParams p;
        p.n = 4;
        p.k = 2;
        p.regime = Regime::RationalNegative;
        p.seed = seed;
        const auto inst = generate_instance(p);
        for (const auto& d : inst.demands) {
            for (const auto& w : enumerate_walks(inst, d.s, d.t, 5)) {
                if (is_feasible(w, d, inst)) CHECK(is_theta_feasible(w, d, inst, Rational(1, 100)));
            }
        }
    }
}

TEST_CASE("negative cycles are rejected") {
    PcsInstance inst;
    inst.n = 2;
    inst.edges = {fixtures::edge(0, 1, 1, 1), fixtures::edge(1, 0, 1, -2)};
    CHECK(has_negative_cycle(inst));
    CHECK_THROWS_AS(validate_structure(inst), InfeasibleInstanceError);
    inst.edges[1].r.length = -1;
    CHECK_FALSE(has_negative_cycle(inst));
}

TEST_CASE("structural validation") {
    auto inst = fixtures::three_vertex();
    CHECK_NOTHROW(validate_structure(inst));
    inst.edges[0].r.res[0] = 2;  // above tau
    CHECK_THROWS_AS(validate_structure(inst), InfeasibleInstanceError);
    inst = fixtures::three_vertex();
    inst.edges[0].cost = -1;
    CHECK_THROWS_AS(validate_structure(inst), InfeasibleInstanceError);
}

TEST_CASE("hop bound is tight against exhaustive enumeration") {
    CHECK(hop_bound(fixtures::three_vertex()) == 3);
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        GeneratorParams p;
        p.n = 5;
        p.k = 2;
        p.m = 1;
        p.seed = seed;
        const auto inst = generate_instance(p);
        const int H = hop_bound(inst);
        bool some_needs_all = false;
        for (const auto& d : inst.demands) {
            CHECK_FALSE(enumerate_feasible_walks(inst, d, H - 1).walks.empty());
            if (H >= 2 && enumerate_feasible_walks(inst, d, H - 2).walks.empty()) some_needs_all = true;
        }
        CHECK(some_needs_all);
    }
}

TEST_CASE("condition numbers ignore edge and demand order") {
    GeneratorParams p;
    p.n = 5;
    p.k = 3;
    p.regime = Regime::RationalNegative;
    p.seed = 7;
    auto inst = generate_instance(p);
    const auto before = condition_numbers(inst);
    std::reverse(inst.edges.begin(), inst.edges.end());
    std::reverse(inst.demands.begin(), inst.demands.end());
    const auto after = condition_numbers(inst);
    CHECK(before.eta == after.eta);
    CHECK(before.xi == after.xi);
}

TEST_CASE("configuration space clamps covering and rejects packing overflow") {
    PcsInstance inst;
    inst.n = 1;
    inst.m = 2;
    inst.tau = 2;
    inst.packing = 1;
    inst.covering = 1;
    const ConfigSpace cs(inst);
    CHECK(cs.size() == 9);
    for (std::int64_t i = 0; i < cs.size(); ++i) CHECK(cs.index(cs.decode(i)) == i);
    std::vector<std::int64_t> out;
    CHECK(cs.step({1, -2}, {1, -1}, out));
    CHECK(out == std::vector<std::int64_t>{2, -2});
    CHECK_FALSE(cs.step({2, 0}, {1, 0}, out));
}

TEST_CASE("instance JSON round trip and parse errors with field paths") {
    const auto inst = fixtures::three_vertex();
    const auto text = to_json(inst);
    CHECK(to_json(parse_pcs(text)) == text);

    auto expect_error = [](const std::string& doc, const std::string& needle) {
        try {
            parse_pcs(doc);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
        }
    };
    const std::string head = R"({"n":2,"m":0,"tau":0,"packing":0,"covering":0,)";
    expect_error(head + R"("edges":[{"u":0,"v":1,"cost":"3/0","res":[1]}],"demands":[]})", "/edges/0/cost");
    expect_error(head + R"("edges":[{"u":0,"v":5,"cost":1,"res":[1]}],"demands":[]})", "/edges/0/v");
    expect_error(head + R"("edges":[{"u":0,"v":1,"cost":1,"res":[1,2]}],"demands":[]})", "/edges/0/res");
    expect_error(head + R"("edges":[],"demands":[{"s":0,"t":1}]})", "/demands/0/budget");
    expect_error("{\n\"n\": 2,\n\"m\": ]", "line 3");
}

TEST_CASE("integers are accepted as rational shorthand") {
    const std::string doc = R"({"n":2,"m":1,"tau":1,"packing":1,"covering":0,
        "edges":[{"u":0,"v":1,"cost":2,"res":["1/2",1]}],"demands":[{"s":0,"t":1,"budget":[1,1]}]})";
    const auto inst = parse_pcs(doc);
    CHECK(inst.edges[0].cost == 2);
    CHECK(inst.edges[0].r.length == Rational(1, 2));
}
