#include "fixtures.hpp"

#include "pcspan/errors.hpp"
#include "pcspan/exact_oracle.hpp"
#include "pcspan/generator.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace pcspan;

namespace {

// Number of s -> t walks with at most `cap` edges from powers of the adjacency matrix.
std::int64_t walk_count(const PcsInstance& inst, int s, int t, int cap) {
    const int n = inst.n;
    std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n, 0));
    for (const auto& e : inst.edges) ++a[e.u][e.v];
    std::vector<std::int64_t> row(n, 0);
    row[s] = 1;
    std::int64_t total = s == t ? 1 : 0;
    for (int len = 1; len <= cap; ++len) {
        std::vector<std::int64_t> next(n, 0);
        for (int u = 0; u < n; ++u) {
            for (int v = 0; v < n; ++v) next[v] += row[u] * a[u][v];
        }
        row.swap(next);
        total += row[t];
    }
    return total;
}

}  // namespace

TEST_CASE("single direct edge with cap 1") {
    PcsInstance inst;
    inst.n = 2;
    inst.edges = {fixtures::edge(0, 1, 1, 1)};
    inst.demands = {fixtures::demand(0, 1, 1)};
    CHECK(enumerate_feasible_walks(inst, inst.demands[0], 1).walks.size() == 1);
}

TEST_CASE("packing overflow empties the catalog") {
    PcsInstance inst;
    inst.n = 3;
    inst.m = 1;
    inst.tau = 1;
    inst.packing = 1;
    inst.edges = {fixtures::edge(0, 1, 1, 1, {1}), fixtures::edge(1, 2, 1, 1, {1})};
    inst.demands = {fixtures::demand(0, 2, 5, {1})};
    CHECK(enumerate_feasible_walks(inst, inst.demands[0], 5).walks.empty());
}

TEST_CASE("catalog completeness against adjacency-matrix powers") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 15; ++trial) {
        PcsInstance inst;
        inst.n = 4;
        for (int i = 0; i < 7; ++i) {
            inst.edges.push_back(fixtures::edge(static_cast<int>(uniform_int(rng, 0, 3)),
                                                static_cast<int>(uniform_int(rng, 0, 3)), 1, 1));
        }
        const int cap = 6;
        for (int s = 0; s < 4; ++s) {
            for (int t = 0; t < 4; ++t) {
                const Demand d = fixtures::demand(s, t, cap);
                const auto catalog = enumerate_feasible_walks(inst, d, cap);
                CHECK(static_cast<std::int64_t>(catalog.walks.size()) == walk_count(inst, s, t, cap));
                for (const auto& w : catalog.walks) CHECK(is_feasible(w, d, inst));
            }
        }
    }
}

TEST_CASE("brute-force optimum on fixed instances") {
    CHECK(brute_force_opt(fixtures::three_vertex()).cost == 2);
    const auto shared = brute_force_opt(fixtures::shared_edge());
    CHECK(shared.cost == 7);
    CHECK(shared.edges == std::vector<int>{0, 1, 2});
    CHECK(brute_force_opt(fixtures::hub(3)).cost == 9);
}

TEST_CASE("single-demand optimum is the cheapest feasible walk") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GeneratorParams p;
        p.n = 5;
        p.k = 1;
        p.m = 1;
        p.seed = seed;
        const auto inst = generate_instance(p);
        Rational best = -1;
        for (const auto& w : enumerate_feasible_walks(inst, inst.demands[0], 8).walks) {
            std::vector<int> es = w.edges;
            std::sort(es.begin(), es.end());
            es.erase(std::unique(es.begin(), es.end()), es.end());
            Rational c = 0;
            for (int e : es) c += inst.edges[e].cost;
            if (best < 0 || c < best) best = c;
        }
        CHECK(brute_force_opt(inst, 8).cost == best);
    }
}

TEST_CASE("minimum-density junction on the hub instance") {
    const auto res = brute_force_min_density_junction(fixtures::hub(3));
    CHECK(res.root == 0);
    CHECK(res.density == 3);
    CHECK(res.demands.size() == 3);
}

TEST_CASE("oracle self-consistency and the density witness on random instances") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GeneratorParams p;
        p.n = 5;
        p.k = 3;
        p.m = 1;
        p.max_length = 2;
        p.seed = seed;
        const auto inst = generate_instance(p);
        const auto opt = brute_force_opt(inst, 8).cost;
        const auto dens = brute_force_min_density_junction(inst, 8).density;
        CHECK(dens <= opt);
        CHECK(dens * dens * 3 <= opt * opt);
    }
}

TEST_CASE("oracle refuses beyond its limits") {
    PcsInstance inst;
    inst.n = 2;
    inst.edges = {fixtures::edge(0, 1, 1, 0), fixtures::edge(1, 0, 1, 0), fixtures::edge(0, 0, 1, 0)};
    inst.demands = {fixtures::demand(0, 1, 1)};
    CHECK_THROWS_AS(enumerate_feasible_walks(inst, inst.demands[0], 12, nullptr, 100), ScaleError);
}
