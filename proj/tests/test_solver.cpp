#include "fixtures.hpp"

#include "pcspan/errors.hpp"
#include "pcspan/exact_oracle.hpp"
#include "pcspan/generator.hpp"
#include "pcspan/greedy.hpp"
#include "pcspan/junction.hpp"
#include "pcspan/report_io.hpp"

#include <doctest.h>

using namespace pcspan;

TEST_CASE("three-vertex example costs 2") {
    const auto inst = fixtures::three_vertex();
    for (auto backend : {LpBackend::Highs, LpBackend::ExactSimplex}) {
        SolverConfig cfg;
        cfg.backend = backend;
        const auto report = solve_pcs(inst, cfg);
        CHECK(report.cost == 2);
        CHECK(report.edges == std::vector<int>{0, 1});
        CHECK(report.witnesses[0].feasible);
    }
}

TEST_CASE("shared edges are bought once") {
    const auto inst = fixtures::shared_edge();
    const auto report = solve_pcs(inst, SolverConfig{});
    CHECK(report.cost == brute_force_opt(inst).cost);
    CHECK(report.cost == 7);
    REQUIRE(report.iterations.size() == 1);
    CHECK(report.iterations[0].root == 2);
}

TEST_CASE("hub instance resolves every demand through the hub") {
    const auto inst = fixtures::hub(3);
    const auto report = solve_pcs(inst, SolverConfig{});
    CHECK(report.cost == 9);
    REQUIRE(report.iterations.size() == 1);
    CHECK(report.iterations[0].root <= 1);
    CHECK(report.iterations[0].density == 3);
}

TEST_CASE("no demands means an empty solution") {
    auto inst = fixtures::three_vertex();
    inst.demands.clear();
    const auto report = solve_pcs(inst, SolverConfig{});
    CHECK(report.cost == 0);
    CHECK(report.edges.empty());
    CHECK(report.iterations.empty());
}

TEST_CASE("restricting roots to a useless vertex is reported") {
    auto inst = fixtures::shared_edge();
    SolverConfig cfg;
    cfg.roots = std::vector<int>{3};  // vertex 3 has no outgoing edges
    inst.demands = {inst.demands[0]};
    inst.demands[0].t = 2;
    CHECK_THROWS_AS(solve_pcs(inst, cfg), EssentialityViolation);
}

TEST_CASE("theta mode output is theta-feasible") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        GeneratorParams p;
        p.n = 4;
        p.k = 2;
        p.m = 1;
        p.regime = Regime::RationalNegative;
        p.seed = seed;
        const auto inst = generate_instance(p);
        SolverConfig cfg;
        cfg.mode = SolveMode::Theta;
        cfg.theta = Rational(1, 2);
        const auto report = solve_pcs(inst, cfg);
        const auto checks = verify_solution(inst, report.edges, cfg.theta);
        for (const auto& c : checks) CHECK(c.feasible);
    }
}

TEST_CASE("reports are deterministic and independent of the worker count") {
    GeneratorParams p;
    p.n = 5;
    p.k = 3;
    p.m = 1;
    p.seed = 9;
    const auto inst = generate_instance(p);
    SolverConfig cfg;
    cfg.seed = 77;
    const auto a = report_to_json(solve_pcs(inst, cfg));
    const auto b = report_to_json(solve_pcs(inst, cfg));
    cfg.workers = 3;
    const auto c = report_to_json(solve_pcs(inst, cfg));
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("junction trees never beat the exact minimum density") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        GeneratorParams p;
        p.n = 4;
        p.k = 2;
        p.m = 1;
        p.max_length = 2;
        p.seed = seed;
        const auto inst = generate_instance(p);
        const auto exact = brute_force_min_density_junction(inst);
        const auto found = min_density_junction_tree(inst, SolverConfig{}, seed);
        REQUIRE(found.tree.has_value());
        CHECK(found.tree->density >= exact.density);
        for (std::size_t i = 0; i < found.tree->resolved.size(); ++i) {
            const auto& w = found.tree->witnesses[i];
            CHECK(is_feasible(w, inst.demands[found.tree->resolved[i]], inst));
            CHECK(walk_visits(w, inst, found.tree->root));
        }
    }
}

TEST_CASE("density lemma on fixed instances") {
    for (const auto& inst : {fixtures::hub(3), fixtures::shared_edge(), fixtures::three_vertex()}) {
        CHECK(density_lemma_check(inst).holds);
    }
}

TEST_CASE("seed derivation separates streams") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(5, 3) == derive_seed(5, 3));
}
