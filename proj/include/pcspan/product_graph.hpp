#pragma once

#include "pcspan/model.hpp"
#include "pcspan/scaling.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pcspan {

// How entry 0 becomes an integer label coordinate.
struct LayerSpec {
    std::vector<std::int64_t> edge_units;  // entry-0 label step per edge
    std::int64_t lo0 = 0;                  // t-[0]
    std::int64_t hi0 = 0;                  // t+[0]
    std::vector<std::int64_t> demand_cap0; // relation bound on (I + J)[0] per demand
};

// Integer regime: lengths must be nonnegative integers; t-[0] = 0, t+[0] = Bdgt_max[0].
LayerSpec integer_layers(const PcsInstance& instance);
// Scaled regime: labels in units of delta; relation uses the theta-relaxed length bound.
LayerSpec scaled_layers(const ScaledInstance& scaled);

// Mixed-radix indexing of valid labels I with t- <= I <= t+.
class LabelSpace {
public:
    LabelSpace() = default;
    LabelSpace(const PcsInstance& instance, std::int64_t lo0, std::int64_t hi0);

    std::int64_t size() const { return size_; }
    int dims() const { return static_cast<int>(lo_.size()); }
    std::int64_t lo(int i) const { return lo_[i]; }
    std::int64_t hi(int i) const { return hi_[i]; }
    bool valid(const std::vector<std::int64_t>& label) const;
    std::int64_t index(const std::vector<std::int64_t>& label) const;
    std::vector<std::int64_t> decode(std::int64_t index) const;
    std::int64_t zero_index() const;

private:
    std::vector<std::int64_t> lo_;
    std::vector<std::int64_t> hi_;
    std::int64_t size_ = 0;
};

enum class Side { L, R };

struct ProductVertex {
    enum class Kind { State, SourceTerminal, SinkTerminal };
    Kind kind = Kind::State;
    int vertex = 0;       // base vertex (state) or demand endpoint (terminal)
    Side side = Side::L;
    std::int64_t label = 0;
    int demand = -1;      // terminals only
};

struct ProductEdge {
    int from = 0;
    int to = 0;
    Rational cost;
    int base_edge = -1;  // -1 for the dummy edge and terminal attachments
};

struct ProductConfig {
    std::int64_t max_vertices = 10'000'000;
};

struct ProductGraph {
    int root = 0;
    int n = 0;
    int num_demands = 0;
    LabelSpace labels;
    std::vector<ProductVertex> vertices;
    std::vector<ProductEdge> edges;
    std::vector<std::vector<int>> out;
    std::vector<std::vector<int>> in;
    int root_left = 0;
    int root_right = 0;
    int dummy_edge = 0;
    std::vector<std::vector<std::int64_t>> budget_caps;  // per demand: (cap0, Bdgt[1..m])

    int state(Side side, int u, std::int64_t label) const;
    int source_terminal(int demand, std::int64_t label) const;
    int sink_terminal(int demand, std::int64_t label) const;
    bool in_relation(int demand, std::int64_t source_label, std::int64_t sink_label) const;
    std::vector<std::int64_t> label_of(int product_vertex) const { return labels.decode(vertices[product_vertex].label); }
};

std::int64_t product_vertex_count(const PcsInstance& instance, const LayerSpec& spec);

ProductGraph build_product_graph(const PcsInstance& instance, const LayerSpec& spec, int root,
                                 const ProductConfig& config = {});

// Reachability over product edges.
std::vector<char> forward_reach(const ProductGraph& pg, int from);
std::vector<char> backward_reach(const ProductGraph& pg, int to);

// Base walk from a sequence of product edges: non-dummy edges map to their base edge.
Walk project_to_base(const ProductGraph& pg, const std::vector<int>& product_edges, int start_vertex);

// Per demand: does some relation-compatible terminal pair connect through the root?
std::vector<bool> product_connectivity(const ProductGraph& pg);

struct EquivalenceReport {
    std::vector<bool> product_side;
    std::vector<bool> oracle_side;
    int mismatches = 0;
};

// Integer regime: product connectivity vs. the oracle's feasible s -> root -> t walks.
EquivalenceReport equivalence_check(const PcsInstance& instance, int root, const ProductConfig& config = {});

std::string dump_product_graph(const ProductGraph& pg);

}  // namespace pcspan
