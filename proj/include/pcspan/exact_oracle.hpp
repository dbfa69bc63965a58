#pragma once

#include "pcspan/model.hpp"

#include <cstdint>
#include <vector>

namespace pcspan {

struct WalkCatalog {
    std::vector<Walk> walks;  // every feasible edge sequence up to the cap
};

// All walks s -> t with at most max_edges edges (no feasibility filter).
std::vector<Walk> enumerate_walks(const PcsInstance& instance, int s, int t, int max_edges,
                                  std::int64_t limit = 2'000'000);

// Depth-first enumeration with packing/length pruning; theta relaxes only entry 0.
WalkCatalog enumerate_feasible_walks(const PcsInstance& instance, const Demand& demand, int cap = 12,
                                     const Rational* theta = nullptr, std::int64_t limit = 2'000'000);

// Distinct edge sets of the walks with every strict superset removed.
std::vector<std::vector<int>> minimal_edge_sets(const std::vector<Walk>& walks);

struct OptResult {
    Rational cost;
    std::vector<int> edges;
};

OptResult brute_force_opt(const PcsInstance& instance, int cap = 12, std::int64_t limit = 1'000'000);

struct DensityResult {
    int root = -1;
    Rational density;
    std::vector<int> demands;
    std::vector<int> edges;
};

DensityResult brute_force_min_density_junction(const PcsInstance& instance, int cap = 12,
                                               std::int64_t limit = 1'000'000);

// Minimum-cost union choosing one edge set per group (branch and bound). Empty group list -> cost 0.
OptResult min_cost_union(const PcsInstance& instance, const std::vector<std::vector<std::vector<int>>>& choices,
                         std::int64_t limit = 1'000'000);

}  // namespace pcspan
