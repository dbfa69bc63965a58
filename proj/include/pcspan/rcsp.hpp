#pragma once

#include "pcspan/model.hpp"

#include <optional>
#include <vector>

namespace pcspan {

// Optional restriction to a subset of edges; empty mask means "all edges".
using EdgeMask = std::vector<char>;

EdgeMask mask_from_edges(const PcsInstance& instance, const std::vector<int>& edges);

// Minimal walk length per (vertex, clamped config) from one source.
// With through_root >= 0 the state also carries a "root visited" flag.
struct LabelTable {
    int n = 0;
    std::int64_t configs = 0;
    int flags = 1;
    std::vector<char> reached;
    std::vector<Rational> length;
    std::vector<int> pred_edge;
    std::vector<std::int64_t> pred_state;

    std::int64_t state(int vertex, std::int64_t config, int flag = 0) const {
        return (static_cast<std::int64_t>(vertex) * configs + config) * flags + flag;
    }
    bool has(int vertex, std::int64_t config, int flag = 0) const { return reached[state(vertex, config, flag)]; }
};

LabelTable shortest_lengths_from(const PcsInstance& instance, int source, const EdgeMask& mask = {},
                                 int through_root = -1);

std::optional<Walk> feasible_witness(const PcsInstance& instance, const Demand& demand,
                                     const EdgeMask& mask = {}, const Rational* theta = nullptr);

// Feasible walk s -> t that visits `root` somewhere (endpoints included).
std::optional<Walk> feasible_witness_through(const PcsInstance& instance, const Demand& demand, int root,
                                             const EdgeMask& mask = {}, const Rational* theta = nullptr);

struct DemandCheck {
    bool feasible = false;
    std::optional<Walk> witness;
};

std::vector<DemandCheck> verify_solution(const PcsInstance& instance, const std::vector<int>& subgraph,
                                         const std::optional<Rational>& theta = std::nullopt);

// Throws InfeasibleInstanceError naming the first demand with no feasible walk.
void require_feasible_demands(const PcsInstance& instance);

}  // namespace pcspan
