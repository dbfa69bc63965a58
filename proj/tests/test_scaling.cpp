#include "fixtures.hpp"

#include "pcspan/errors.hpp"
#include "pcspan/exact_oracle.hpp"
#include "pcspan/generator.hpp"
#include "pcspan/scaling.hpp"

#include <doctest.h>

#include <random>

using namespace pcspan;

TEST_CASE("figure 2 lengths with delta 2") {
    const auto scaled = scale_with_delta(fixtures::figure2(), Rational(2), Rational(1, 10));
    const std::vector<Rational> expected = {2, 4, 2, 2, 2, 2, 4, -2};
    const auto g = scaled.scaled();
    for (std::size_t e = 0; e < expected.size(); ++e) CHECK(g.edges[e].r.length == expected[e]);
}

TEST_CASE("scaled units round up") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        const Rational len(uniform_int(rng, -50, 50), uniform_int(rng, 1, 9));
        const Rational delta(uniform_int(rng, 1, 20), uniform_int(rng, 1, 7));
        const auto d = scaled_units(len, delta);
        CHECK((d - 1) * delta < len);
        CHECK(len <= d * delta);
    }
}

TEST_CASE("delta is theta times the smallest budget over the hop bound") {
    const auto inst = fixtures::three_vertex();
    int hops = 0;
    CHECK(compute_delta(inst, Rational(1, 10), &hops) == Rational(1, 15));
    CHECK(hops == 3);
    auto zero = inst;
    zero.demands[0].budget.length = 0;
    CHECK_THROWS_AS(compute_delta(zero, Rational(1, 10)), DivisionUndefinedError);
    CHECK_THROWS_AS(compute_delta(inst, Rational(0)), ParameterError);
}

TEST_CASE("scaling claims hold on walks below the hop bound") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GeneratorParams p;
        p.n = 4;
        p.k = 2;
        p.regime = Regime::RationalNegative;
        p.seed = seed;
        const auto inst = generate_instance(p);
        const auto scaled = scale_instance(inst, Rational(1, 2));
        std::vector<Walk> walks;
        for (const auto& d : inst.demands) {
            for (auto& w : enumerate_walks(inst, d.s, d.t, std::min(scaled.hop_bound - 1, 6))) walks.push_back(std::move(w));
        }
        const auto violations = check_scaling_claims(scaled, walks);
        CHECK(violations.empty());
    }
}

TEST_CASE("label range bounds") {
    const auto scaled = scale_with_delta(fixtures::figure2(), Rational(2), Rational(1, 10));
    auto with_hops = scaled;
    with_hops.hop_bound = 3;
    CHECK(scaled_lower_bound(with_hops) == -3);
    CHECK(scaled_upper_bound(with_hops) >= 0);
}
