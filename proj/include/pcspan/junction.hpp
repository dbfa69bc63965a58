#pragma once

#include "pcspan/density_lp.hpp"
#include "pcspan/lp.hpp"
#include "pcspan/model.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace pcspan {

enum class SolveMode { Integer, Theta };

struct SolverConfig {
    SolveMode mode = SolveMode::Integer;
    Rational epsilon{1, 2};
    Rational theta{1, 10};
    std::uint64_t seed = 1;
    std::int64_t max_product_vertices = 10'000'000;
    int rounding_retries = 64;
    int workers = 1;
    LpBackend backend = LpBackend::Highs;
    std::optional<std::vector<int>> roots;  // restrict root enumeration
};

struct RootStats {
    int root = 0;
    std::int64_t product_vertices = 0;
    int relation_pairs = 0;
    int lp_variables = 0;
    int lp_rows = 0;
    bool rounding_failed = false;
    bool mass_deficit = false;
};

struct JunctionResult {
    std::optional<JunctionTree> tree;
    std::vector<RootStats> roots;
    std::int64_t max_product_vertices = 0;
};

// Best-density tree over the configured roots. In theta mode the instance is scaled first.
JunctionResult min_density_junction_tree(const PcsInstance& instance, const SolverConfig& config, std::uint64_t seed);

// Candidate trees at one root: LP rounding (when the LP has mass) and the direct-path fallback.
std::optional<JunctionTree> junction_tree_at_root(const PcsInstance& instance, const SolverConfig& config, int root,
                                                  std::uint64_t seed, RootStats* stats = nullptr);

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace pcspan
