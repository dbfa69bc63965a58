#include "fixtures.hpp"

#include "pcspan/errors.hpp"
#include "pcspan/exact_oracle.hpp"
#include "pcspan/generator.hpp"
#include "pcspan/rcsp.hpp"
#include "pcspan/reductions.hpp"

#include <doctest.h>

using namespace pcspan;
using namespace fixtures;

TEST_CASE("figure 1 needs a walk through c twice") {
    const auto rcs = figure1();
    const Walk paper_walk{A, {0, 1, 7, 8, 9, 4, 5, 6, 2, 3}};
    CHECK(walk_end(paper_walk, rcs_to_pcs(rcs).pcs) == E);
    CHECK(is_routing_feasible(paper_walk, rcs.demands[0], rcs));
    const auto w = routing_feasible_witness(rcs, rcs.demands[0]);
    REQUIRE(w.has_value());
    CHECK(w->edges.size() == 10);
    CHECK_FALSE(routing_feasible_witness(figure1(9), figure1(9).demands[0]).has_value());
}

TEST_CASE("routing feasibility of individual walks") {
    auto rcs = figure1();
    const Walk straight{A, {0, 1, 2, 3}};
    CHECK_FALSE(is_routing_feasible(straight, rcs.demands[0], rcs));
    rcs.demands[0].ctrl = {10, 0, 0};
    CHECK(is_routing_feasible(straight, rcs.demands[0], rcs));
    rcs.demands[0].ctrl = {3, 0, 0};
    CHECK_FALSE(is_routing_feasible(straight, rcs.demands[0], rcs));
    // Forbid vertex c, which lies inside the only short walk.
    rcs.groups.push_back({C});
    rcs.demands[0].ctrl = {10, 0, 0, -1};
    CHECK_FALSE(is_routing_feasible(straight, rcs.demands[0], rcs));
    CHECK_FALSE(routing_feasible_witness(rcs, rcs.demands[0]).has_value());
}

TEST_CASE("forbidden group gives packing consumption above a zero budget") {
    RcsInstance rcs;
    rcs.n = 3;
    rcs.visit_groups = 0;
    rcs.groups = {{1}};
    rcs.edges = {RcsEdge{0, 1, 1, 1}, RcsEdge{1, 2, 1, 1}};
    rcs.demands = {RcsDemand{0, 2, {5, -1}}};
    const auto red = rcs_to_pcs(rcs);
    CHECK(red.pcs.packing == 1);
    CHECK(red.pcs.edges[0].r.res[0] == 1);
    CHECK(red.pcs.demands[0].budget.res[0] == 0);
    CHECK_FALSE(feasible_witness(red.pcs, red.pcs.demands[0]).has_value());
    CHECK_FALSE(routing_feasible_witness(rcs, rcs.demands[0]).has_value());
}

TEST_CASE("the c times group-size avoid budget loses allowed walks") {
    RcsInstance rcs;
    rcs.n = 3;
    rcs.visit_groups = 0;
    rcs.groups = {{1}};
    rcs.edges = {RcsEdge{0, 1, 1, 1}, RcsEdge{1, 2, 1, 1}};
    rcs.demands = {RcsDemand{0, 2, {5, 0}}};
    CHECK(routing_feasible_witness(rcs, rcs.demands[0]).has_value());
    const auto m_budget = rcs_to_pcs(rcs, AvoidBudget::ControlsTimesGroup);
    const auto c_budget = rcs_to_pcs(rcs, AvoidBudget::VisitsTimesGroup);
    CHECK(feasible_witness(m_budget.pcs, m_budget.pcs.demands[0]).has_value());
    CHECK_FALSE(feasible_witness(c_budget.pcs, c_budget.pcs.demands[0]).has_value());
}

TEST_CASE("a source inside a must-visit group counts as visited") {
    RcsInstance rcs;
    rcs.n = 2;
    rcs.visit_groups = 1;
    rcs.groups = {{0}};
    rcs.edges = {RcsEdge{0, 1, 1, 1}};
    rcs.demands = {RcsDemand{0, 1, {1, 1}}};
    CHECK(is_routing_feasible(Walk{0, {0}}, rcs.demands[0], rcs));
    const auto red = rcs_to_pcs(rcs);
    CHECK(red.pcs.demands[0].budget.res[0] == 0);
    CHECK(feasible_witness(red.pcs, red.pcs.demands[0]).has_value());
}

TEST_CASE("routing feasibility is preserved by the reduction on random instances") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        RcsParams p;
        p.n = 5;
        p.k = 4;
        p.visit_groups = static_cast<int>(seed % 3);
        p.avoid_groups = static_cast<int>((seed / 3) % 2);
        p.max_group_size = 2;
        p.seed = seed;
        const auto rcs = generate_rcs(p, false);
        const auto red = rcs_to_pcs(rcs);
        for (std::size_t d = 0; d < rcs.demands.size(); ++d) {
            const auto rw = routing_feasible_witness(rcs, rcs.demands[d]);
            const auto pw = feasible_witness(red.pcs, red.pcs.demands[d]);
            CHECK(rw.has_value() == pw.has_value());
            if (pw) CHECK(is_routing_feasible(*pw, rcs.demands[d], rcs));
        }
    }
}

TEST_CASE("solve_rcs on figure 1 buys every edge") {
    const auto report = solve_rcs(figure1(), SolverConfig{});
    CHECK(report.cost == 10);
    CHECK(is_routing_feasible(*report.witnesses[0].witness, figure1().demands[0], figure1()));
}

TEST_CASE("weighted transitive closure of a 1,1,5 triangle") {
    const std::vector<HopsetEdge> edges = {{0, 1, 1}, {1, 2, 1}, {0, 2, 5}};
    const auto wc = weighted_transitive_closure(3, edges);
    CHECK(*wc.dist[0][2] == 2);
    CHECK_FALSE(wc.dist[2][0].has_value());
    bool seen02 = false;
    for (const auto& ce : wc.edges) {
        if (ce.u == 0 && ce.v == 2) {
            seen02 = true;
            CHECK(ce.weight == 2);
            CHECK(ce.cost == 1);
        }
        if (ce.u == 0 && ce.v == 1) CHECK(ce.cost == 0);
        CHECK_FALSE((ce.u == 2 && ce.v == 0));
    }
    CHECK(seen02);
}

TEST_CASE("hopset verification") {
    HopsetInstance hs;
    hs.n = 4;
    hs.edges = {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}};
    hs.demands = {{0, 3, 3, 2}};
    CHECK_FALSE(verify_hopset(hs, {})[0]);
    CHECK(verify_hopset(hs, {{0, 2}})[0]);
    std::vector<std::pair<int, int>> all;
    for (const auto& ce : weighted_transitive_closure(4, hs.edges).edges) {
        if (ce.cost == 1) all.emplace_back(ce.u, ce.v);
    }
    CHECK(verify_hopset(hs, all)[0]);
    hs.demands[0].dist = 2;
    CHECK_FALSE(verify_hopset(hs, all)[0]);
    CHECK_THROWS_AS(verify_hopset(hs, {{3, 0}}), ContractError);
}

TEST_CASE("hopset on the path P4 with beta 2") {
    HopsetInstance hs;
    hs.n = 4;
    hs.edges = {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}};
    for (int s = 0; s < 4; ++s) {
        for (int t = s + 1; t < 4; ++t) hs.demands.push_back({s, t, t - s, 2});
    }
    const auto exact = exact_min_hopset(hs);
    REQUIRE(exact.has_value());
    CHECK(exact->size() == 1);
    const auto sol = solve_hopset(hs, SolverConfig{});
    for (bool ok : verify_hopset(hs, sol.added)) CHECK(ok);
    CHECK(sol.report.cost == static_cast<int>(sol.added.size()));
}

TEST_CASE("beta 1 needs a direct closure edge") {
    HopsetInstance hs;
    hs.n = 3;
    hs.edges = {{0, 1, 2}, {1, 2, 2}};
    hs.demands = {{0, 2, 4, 1}};
    const auto sol = solve_hopset(hs, SolverConfig{});
    CHECK(sol.added == std::vector<std::pair<int, int>>{{0, 2}});
    hs.demands[0].dist = 3;
    CHECK_THROWS_AS(hopset_to_pcs(hs), InfeasibleInstanceError);
}
