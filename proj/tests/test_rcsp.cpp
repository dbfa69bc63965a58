#include "fixtures.hpp"

#include "pcspan/errors.hpp"
#include "pcspan/exact_oracle.hpp"
#include "pcspan/generator.hpp"
#include "pcspan/rcsp.hpp"

#include <doctest.h>

#include <random>

using namespace pcspan;

namespace {

bool uses_only(const Walk& w, const EdgeMask& mask) {
    for (int e : w.edges) {
        if (!mask[e]) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("witness search agrees with exhaustive enumeration on random subgraphs") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        GeneratorParams p;
        p.n = 4;
        p.k = 2;
        p.m = 1 + static_cast<int>(seed % 2);
        p.max_length = 2;
        p.seed = seed;
        const auto inst = generate_instance(p);
        std::mt19937_64 rng(seed * 31);
        EdgeMask mask(inst.edges.size());
        for (auto& bit : mask) bit = uniform_int(rng, 0, 3) != 0;
        for (const auto& d : inst.demands) {
            const int cap = static_cast<int>(floor_to_int(d.budget.length));  // unit lengths or more
            bool catalog_hit = false;
            for (const auto& w : enumerate_feasible_walks(inst, d, cap).walks) catalog_hit = catalog_hit || uses_only(w, mask);
            const auto witness = feasible_witness(inst, d, mask);
            CHECK(catalog_hit == witness.has_value());
            if (witness) {
                CHECK(is_feasible(*witness, d, inst));
                CHECK(uses_only(*witness, mask));
            }
        }
    }
}

TEST_CASE("through-root witness agrees with exhaustive enumeration") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GeneratorParams p;
        p.n = 4;
        p.k = 2;
        p.m = 1;
        p.max_length = 2;
        p.seed = seed;
        const auto inst = generate_instance(p);
        for (const auto& d : inst.demands) {
            const auto catalog = enumerate_feasible_walks(inst, d, static_cast<int>(floor_to_int(d.budget.length)));
            for (int r = 0; r < inst.n; ++r) {
                bool hit = false;
                for (const auto& w : catalog.walks) hit = hit || walk_visits(w, inst, r);
                const auto witness = feasible_witness_through(inst, d, r);
                CHECK(hit == witness.has_value());
                if (witness) {
                    CHECK(is_feasible(*witness, d, inst));
                    CHECK(walk_visits(*witness, inst, r));
                }
            }
        }
    }
}

TEST_CASE("verify_solution on the three-vertex example") {
    const auto inst = fixtures::three_vertex();
    CHECK(verify_solution(inst, {0, 1})[0].feasible);
    CHECK_FALSE(verify_solution(inst, {2})[0].feasible);
    CHECK_FALSE(verify_solution(inst, {})[0].feasible);
    CHECK(verify_solution(inst, {2}, Rational(1, 2))[0].feasible);
}

TEST_CASE("theta witnesses are theta-feasible") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GeneratorParams p;
        p.n = 5;
        p.k = 3;
        p.regime = Regime::RationalNegative;
        p.seed = seed;
        const auto inst = generate_instance(p);
        const Rational theta(1, 4);
        for (const auto& d : inst.demands) {
            const auto w = feasible_witness(inst, d, {}, &theta);
            REQUIRE(w.has_value());
            CHECK(is_theta_feasible(*w, d, inst, theta));
        }
    }
}

TEST_CASE("loading rejects demands without a feasible walk") {
    auto inst = fixtures::three_vertex();
    inst.demands[0].budget.length = 1;
    CHECK_THROWS_AS(require_feasible_demands(inst), InfeasibleInstanceError);
}

TEST_CASE("covering requirements force detours") {
    // 0 -> 1 direct, or 0 -> 2 -> 1 through the covering vertex 2.
    PcsInstance inst;
    inst.n = 3;
    inst.m = 1;
    inst.tau = 1;
    inst.packing = 0;
    inst.covering = 1;
    inst.edges = {fixtures::edge(0, 1, 1, 1, {0}), fixtures::edge(0, 2, 1, 1, {-1}), fixtures::edge(2, 1, 1, 1, {0})};
    inst.demands = {fixtures::demand(0, 1, 2, {-1})};
    const auto w = feasible_witness(inst, inst.demands[0]);
    REQUIRE(w.has_value());
    CHECK(w->edges == std::vector<int>{1, 2});
}
