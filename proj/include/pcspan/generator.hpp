#pragma once

#include "pcspan/model.hpp"
#include "pcspan/reductions.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace pcspan {

enum class Regime { Integer, Rational, RationalNegative };

Regime parse_regime(const std::string& text);
std::string regime_name(Regime regime);

struct GeneratorParams {
    int n = 6;
    int k = 3;
    int m = 1;
    int packing = -1;  // -1: half of m rounded up
    std::int64_t tau = 2;
    Regime regime = Regime::Integer;
    std::uint64_t seed = 1;
    std::int64_t max_length = 4;  // integer regime lengths lie in 1..max_length
    int extra_edges = -1;         // -1: n random chords
    std::int64_t max_cost = 5;
    int retries = 200;
};

// Deterministic per seed; every demand has a feasible witness (checked by the oracle).
PcsInstance generate_instance(const GeneratorParams& params);

struct RcsParams {
    int n = 6;
    int k = 3;
    int visit_groups = 1;
    int avoid_groups = 1;
    int max_group_size = 2;
    std::int64_t max_length = 3;
    std::uint64_t seed = 1;
    int extra_edges = -1;
    int retries = 200;
};

// Demands may be infeasible when `feasible_only` is false (used for equivalence checks).
RcsInstance generate_rcs(const RcsParams& params, bool feasible_only = true);

enum class HopsetShape { Path, Cycle, Random };

struct HopsetParams {
    int n = 5;
    int k = 3;
    HopsetShape shape = HopsetShape::Random;
    std::int64_t beta = 2;
    std::int64_t max_length = 3;
    std::int64_t slack = 1;  // Dist = d_G + slack
    std::uint64_t seed = 1;
};

HopsetInstance generate_hopset(const HopsetParams& params);

// Uniform integer in [lo, hi] from a 64-bit engine, independent of the standard library's distributions.
std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

}  // namespace pcspan
