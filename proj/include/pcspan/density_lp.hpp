#pragma once

#include "pcspan/height_reduction.hpp"
#include "pcspan/lp.hpp"
#include "pcspan/model.hpp"
#include "pcspan/product_graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pcspan {

struct LabelCoverLp {
    LinearProgram lp;
    std::vector<int> x;  // per joined edge

    struct PairVar {
        int demand = 0;
        int source = 0;  // index into the demand's source group
        int sink = 0;
        int var = 0;
    };
    std::vector<PairVar> y;
    std::vector<std::vector<int>> z_source;  // [demand][source index] -> variable
    std::vector<std::vector<int>> z_sink;

    struct FlowSystem {
        int demand = 0;
        bool source_side = true;
        int terminal = 0;          // index in the demand's group
        int start = 0;             // joined vertex where flow enters
        int end = 0;               // joined vertex where flow leaves
        std::vector<int> edges;    // joined edge ids
        std::vector<int> vars;     // flow variable per edge
    };
    std::vector<FlowSystem> flows;
    std::vector<std::vector<int>> flow_of_source;  // [demand][source index] -> flow system
    std::vector<std::vector<int>> flow_of_sink;
};

LabelCoverLp build_lp(const JoinedGraph& jg);

struct Representative {
    int id = 0;
    std::vector<std::int64_t> label;
    Rational mass;
};

// Non-decreasing in entry c; ties by full label, then id.
std::vector<Representative> sort_representatives(std::vector<Representative> reps, int c);

// Smallest q whose cumulative mass over representatives with entry c <= q reaches lambda.
std::int64_t median_consumption(const std::vector<Representative>& sorted, const Rational& lambda, int c);

struct PruneInput {
    std::vector<std::vector<std::int64_t>> source_labels;
    std::vector<std::vector<std::int64_t>> sink_labels;
    std::vector<std::pair<int, int>> relation;
    std::vector<Rational> y;  // per relation pair
    std::vector<Rational> z_source;
    std::vector<Rational> z_sink;
    std::vector<std::int64_t> caps;  // (I + J)[c] <= caps[c]
};

struct PrunedDemand {
    Rational gamma;
    std::vector<int> sources;  // surviving indices
    std::vector<int> sinks;
    std::vector<std::int64_t> mu_source;
    std::vector<std::int64_t> mu_sink;  // sink threshold actually applied
    Rational source_z_mass;
    Rational sink_z_mass;
    bool mass_deficit = false;
};

PrunedDemand prune(const PruneInput& input, int m);

std::vector<PrunedDemand> prune_all(const JoinedGraph& jg, const LabelCoverLp& lp, const LpSolution& solution,
                                    const std::vector<std::vector<std::int64_t>>& caps, int m);

struct Bucketing {
    int i_star = -1;
    std::vector<int> demands;  // D_{i*}
    Rational mass;
    Rational factor;           // 2^{m+1} * 2^{i*+1}
    std::vector<Rational> x_star;
};

Bucketing bucket_and_scale(const std::vector<Rational>& gamma, const std::vector<Rational>& x, int m,
                           int total_demands);

struct RoundingResult {
    std::vector<int> edges;      // joined edge ids
    std::vector<int> connected;  // demands connected through the root
    int runs = 0;
    bool partial = false;
};

RoundingResult gst_round(const JoinedGraph& jg, const LabelCoverLp& lp, const LpSolution& solution,
                         const std::vector<PrunedDemand>& pruned, const Bucketing& bucketing, std::uint64_t seed,
                         int max_runs);

struct JunctionTree {
    int root = 0;
    std::vector<int> edges;  // base edge ids, sorted
    std::vector<int> resolved;
    std::vector<Walk> witnesses;
    Rational cost;
    Rational density;
    std::string origin;
};

// Verifies every demand through the root inside the edge set; claimed demands must verify.
std::optional<JunctionTree> assemble_from_base_edges(const PcsInstance& instance, int root, std::vector<int> edges,
                                                     const std::vector<int>& claimed, const Rational* theta,
                                                     std::string origin);

std::optional<JunctionTree> assemble_junction_tree(const PcsInstance& instance, const ProductGraph& pg,
                                                   const JoinedGraph& jg, const RoundingResult& rounded,
                                                   const Rational* theta);

}  // namespace pcspan
