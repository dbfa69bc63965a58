#include "fixtures.hpp"

#include "pcspan/density_lp.hpp"
#include "pcspan/errors.hpp"
#include "pcspan/generator.hpp"
#include "pcspan/lp.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace pcspan;

namespace {

LinearProgram two_by_two() {
    // min x + y  s.t.  x + 2y >= 2,  3x + y >= 3.  Optimum at (4/5, 3/5).
    LinearProgram lp;
    const int x = lp.add_variable(1, "x");
    const int y = lp.add_variable(1, "y");
    lp.add_row({{{x, 1}, {y, 2}}, RowSense::Ge, 2});
    lp.add_row({{{x, 3}, {y, 1}}, RowSense::Ge, 3});
    return lp;
}

}  // namespace

TEST_CASE("both LP backends solve a hand LP exactly") {
    for (auto backend : {LpBackend::ExactSimplex, LpBackend::Highs}) {
        const auto sol = solve_lp(two_by_two(), backend);
        REQUIRE(sol.status == LpStatus::Optimal);
        CHECK(sol.objective == Rational(7, 5));
        CHECK(sol.values[0] == Rational(4, 5));
        CHECK(sol.values[1] == Rational(3, 5));
    }
}

TEST_CASE("infeasible and unbounded LPs") {
    for (auto backend : {LpBackend::ExactSimplex, LpBackend::Highs}) {
        LinearProgram inf;
        const int x = inf.add_variable(1);
        inf.add_row({{{x, 1}}, RowSense::Ge, 2});
        inf.add_row({{{x, 1}}, RowSense::Le, 1});
        CHECK(solve_lp(inf, backend).status == LpStatus::Infeasible);
        LinearProgram unb;
        const int z = unb.add_variable(-1);
        unb.add_row({{{z, 1}}, RowSense::Ge, 0});
        CHECK(solve_lp(unb, backend).status == LpStatus::Unbounded);
    }
}

TEST_CASE("HiGHS agrees with the exact simplex on random LPs") {
    std::mt19937_64 rng(3);
    int solved = 0;
    for (int trial = 0; trial < 40; ++trial) {
        LinearProgram lp;
        const int n = 5;
        for (int j = 0; j < n; ++j) lp.add_variable(uniform_int(rng, 1, 9));
        for (int i = 0; i < 4; ++i) {
            LpRow row;
            for (int j = 0; j < n; ++j) {
                const auto c = uniform_int(rng, -2, 4);
                if (c != 0) row.terms.emplace_back(j, c);
            }
            row.sense = i % 2 ? RowSense::Ge : RowSense::Le;
            row.rhs = uniform_int(rng, 1, 8);
            lp.add_row(row);
        }
        const auto exact = solve_lp_exact(lp);
        const auto highs = solve_lp_highs(lp);
        CHECK(exact.status == highs.status);
        if (exact.status != LpStatus::Optimal || highs.status != LpStatus::Optimal) continue;
        ++solved;
        CHECK(std::abs(to_double(exact.objective - highs.objective)) < 1e-7);
        CHECK_NOTHROW(certify_solution(lp, highs));
        CHECK_NOTHROW(certify_solution(lp, exact, 0.0));
    }
    CHECK(solved > 10);
}

TEST_CASE("certification rejects violated rows") {
    const auto lp = two_by_two();
    LpSolution bad;
    bad.status = LpStatus::Optimal;
    bad.values = {Rational(0), Rational(0)};
    CHECK_THROWS_AS(certify_solution(lp, bad), LpError);
}

TEST_CASE("LP text export") {
    const auto text = to_lp_format(two_by_two());
    CHECK(text.find("Minimize") != std::string::npos);
    CHECK(text.find("Subject To") != std::string::npos);
    CHECK(text.find("End") != std::string::npos);
}

TEST_CASE("weighted median consumption") {
    std::vector<Representative> reps = {{0, {3}, Rational(1, 4)}, {1, {1}, Rational(1, 4)}, {2, {2}, Rational(1, 2)}};
    const auto sorted = sort_representatives(reps, 0);
    CHECK(sorted[0].id == 1);
    CHECK(median_consumption(sorted, Rational(1, 4), 0) == 1);
    CHECK(median_consumption(sorted, Rational(1, 2), 0) == 2);
    CHECK(median_consumption(sorted, Rational(1), 0) == 3);
    CHECK_THROWS_AS(median_consumption(sorted, Rational(2), 0), MassDeficitError);
}

TEST_CASE("pruning two crossing pairs keeps a compatible pair") {
    PruneInput in;
    in.source_labels = {{1}, {9}};
    in.sink_labels = {{9}, {1}};
    in.relation = {{0, 0}, {1, 1}};
    in.y = {Rational(1, 2), Rational(1, 2)};
    in.z_source = {Rational(1, 2), Rational(1, 2)};
    in.z_sink = {Rational(1, 2), Rational(1, 2)};
    in.caps = {10};
    const auto out = prune(in, 0);
    CHECK(out.gamma == 1);
    CHECK(out.sources == std::vector<int>{0});
    CHECK(out.sinks == std::vector<int>{1});
    CHECK(out.source_z_mass == Rational(1, 2));
    CHECK(out.sink_z_mass == Rational(1, 2));
    CHECK_FALSE(out.mass_deficit);
}

TEST_CASE("bucketing picks the heaviest bucket with ties to the smaller index") {
    const std::vector<Rational> gamma = {Rational(1, 2), Rational(1, 4), Rational(1, 4)};
    const std::vector<Rational> x = {Rational(1, 16), Rational(1, 2)};
    const auto b = bucket_and_scale(gamma, x, 0, 3);
    CHECK(b.i_star == 1);
    CHECK(b.demands == std::vector<int>{0});
    CHECK(b.mass == Rational(1, 2));
    CHECK(b.factor == 8);
    CHECK(b.x_star == std::vector<Rational>{Rational(1, 2), Rational(1)});
}

TEST_CASE("the density LP on the three-vertex example equals the shortest compatible path") {
    const auto inst = fixtures::three_vertex();
    const auto pg = build_product_graph(inst, integer_layers(inst), 1);
    const auto jg = build_joined(pg, 2);
    REQUIRE(jg.has_value());
    const auto lp = build_lp(*jg);
    for (auto backend : {LpBackend::Highs, LpBackend::ExactSimplex}) {
        const auto sol = solve_lp(lp.lp, backend);
        REQUIRE(sol.status == LpStatus::Optimal);
        CHECK(sol.objective == 2);
    }
}

TEST_CASE("rounding connects the heaviest bucket on the hub instance") {
    const auto inst = fixtures::hub(3);
    const auto pg = build_product_graph(inst, integer_layers(inst), 0);
    const auto jg = build_joined(pg, 2);
    REQUIRE(jg.has_value());
    const auto lp = build_lp(*jg);
    const auto sol = solve_lp(lp.lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == 3);
    std::vector<Rational> gamma(jg->demands.size(), Rational(0));
    for (const auto& pv : lp.y) gamma[pv.demand] += sol.values[pv.var];
    const auto pruned = prune_all(*jg, lp, sol, pg.budget_caps, inst.m);
    std::vector<Rational> x;
    for (int v : lp.x) x.push_back(sol.values[v]);
    const auto bucketing = bucket_and_scale(gamma, x, inst.m, 3);
    const auto rounded = gst_round(*jg, lp, sol, pruned, bucketing, 42, 64);
    CHECK(2 * rounded.connected.size() >= bucketing.demands.size());
    const auto tree = assemble_junction_tree(inst, pg, *jg, rounded, nullptr);
    REQUIRE(tree.has_value());
    CHECK(tree->root == 0);
    for (std::size_t i = 0; i < tree->resolved.size(); ++i) {
        CHECK(is_feasible(tree->witnesses[i], inst.demands[tree->resolved[i]], inst));
        CHECK(walk_visits(tree->witnesses[i], inst, 0));
    }
}
