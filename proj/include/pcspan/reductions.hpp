#pragma once

#include "pcspan/greedy.hpp"
#include "pcspan/model.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace pcspan {

// Routing-controlled spanner. Groups 0..visit_groups-1 are must-visit candidates, the rest avoid candidates.
// Control vector per demand: [distance, visit flags (0/1)..., avoid flags (-1/0)...].
struct RcsEdge {
    int u = 0;
    int v = 0;
    Rational cost;
    std::int64_t length = 1;
};

struct RcsDemand {
    int s = 0;
    int t = 0;
    std::vector<std::int64_t> ctrl;
};

struct RcsInstance {
    int n = 0;
    int visit_groups = 0;
    std::vector<std::vector<int>> groups;
    std::vector<RcsEdge> edges;
    std::vector<RcsDemand> demands;

    int m() const { return static_cast<int>(groups.size()); }
    int avoid_groups() const { return m() - visit_groups; }
};

// Range and shape checks; throws InfeasibleInstanceError.
void validate_rcs(const RcsInstance& rcs);

// Walk edge ids refer to rcs.edges. The start vertex counts as visited.
bool is_routing_feasible(const Walk& walk, const RcsDemand& demand, const RcsInstance& rcs);

// Shortest routing-feasible walk by search over (vertex, visited must-visit groups).
std::optional<Walk> routing_feasible_witness(const RcsInstance& rcs, const RcsDemand& demand,
                                             const std::vector<char>& edge_mask = {});

enum class AvoidBudget {
    ControlsTimesGroup,  // m * |S_i|
    VisitsTimesGroup,    // c * |S_i|
};

// Packing indices hold the avoid groups, covering indices the must-visit groups; edge ids are unchanged.
struct RcsReduction {
    PcsInstance pcs;
    std::vector<int> resource_of_group;  // 0-based index into Edge::r.res
};

// Throws ContractError when a demand source lies in one of its forbidden groups.
RcsReduction rcs_to_pcs(const RcsInstance& rcs, AvoidBudget avoid_budget = AvoidBudget::ControlsTimesGroup);

SolveReport solve_rcs(const RcsInstance& rcs, const SolverConfig& config);

struct HopsetEdge {
    int u = 0;
    int v = 0;
    std::int64_t length = 1;
};

struct HopsetDemand {
    int s = 0;
    int t = 0;
    std::int64_t dist = 0;
    std::int64_t beta = 0;
};

struct HopsetInstance {
    int n = 0;
    std::vector<HopsetEdge> edges;
    std::vector<HopsetDemand> demands;
};

void validate_hopset(const HopsetInstance& hs);

struct ClosureEdge {
    int u = 0;
    int v = 0;
    std::int64_t weight = 0;
    int cost = 0;  // 0 when G has an edge (u,v) of length weight
};

struct WeightedClosure {
    int n = 0;
    std::vector<ClosureEdge> edges;
    std::vector<std::vector<std::optional<std::int64_t>>> dist;
};

WeightedClosure weighted_transitive_closure(int n, const std::vector<HopsetEdge>& edges);

// PCS edges: every original edge (cost 0), then one cost-1 edge per closure pair not realised by G.
struct HopsetReduction {
    PcsInstance pcs;
    WeightedClosure closure;
    std::vector<std::pair<int, int>> added_pair;  // per PCS edge; (-1,-1) for original edges
};

HopsetReduction hopset_to_pcs(const HopsetInstance& hs);

// Per demand: a path with at most beta hops and length <= dist exists in G plus the added pairs.
std::vector<bool> verify_hopset(const HopsetInstance& hs, const std::vector<std::pair<int, int>>& added);

struct HopsetSolution {
    std::vector<std::pair<int, int>> added;
    SolveReport report;
};

HopsetSolution solve_hopset(const HopsetInstance& hs, const SolverConfig& config);

// Smallest added set by exhaustive search over closure-only pairs; nullopt above max_candidates pairs.
std::optional<std::vector<std::pair<int, int>>> exact_min_hopset(const HopsetInstance& hs, int max_candidates = 20);

}  // namespace pcspan
