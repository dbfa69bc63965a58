#pragma once

#include "pcspan/product_graph.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace pcspan {

struct Arc {
    int from = 0;
    int to = 0;
    Rational cost;
    int id = -1;  // caller's edge id
};

struct Digraph {
    int n = 0;
    std::vector<Arc> arcs;
    std::vector<std::vector<int>> out;
    std::vector<std::vector<int>> in;

    Digraph() = default;
    Digraph(int vertices, std::vector<Arc> arc_list);
};

// Single-source (forward) or single-target (backward) min-cost tree; costs must be >= 0.
struct ShortestPathTree {
    int root = 0;
    bool forward = true;
    std::vector<char> reached;
    std::vector<Rational> dist;
    std::vector<int> link;  // arc index toward the root of the tree

    // Arc indices in walk order between root and v.
    std::vector<int> path(const Digraph& g, int v) const;
};

ShortestPathTree dijkstra(const Digraph& g, int root, bool forward);

struct MetricClosure {
    int n = 0;
    std::vector<ShortestPathTree> from;  // one forward tree per source

    std::optional<Rational> cost(int u, int v) const;
    std::vector<int> path(const Digraph& g, int u, int v) const;  // arc ids
};

MetricClosure cost_metric_closure(const Digraph& g);

// One half of the product graph, re-indexed on its relevant vertices.
struct HalfGraph {
    Side side = Side::L;
    std::vector<int> product_of;   // local -> product vertex
    std::vector<int> local_of;     // product vertex -> local, -1 if absent
    Digraph graph;                 // arc ids are product edge ids
    int root = 0;                  // local id of (r,0,L) or (r,0,R)
    std::vector<int> terminals;    // local ids
};

// up: terminals are sources at level 0, root at level h.  down: root at level 0, sinks at level h.
struct LayeredGraph {
    int h = 1;
    bool up = true;
    std::vector<std::vector<int>> levels;  // local ids of the half per level

    struct LayeredEdge {
        int level = 0;   // from level -> level + 1
        int from = 0;    // local ids
        int to = 0;
        Rational cost;
        int tree = -1;   // closure tree used to expand the edge
    };
    std::vector<LayeredEdge> edges;
    std::vector<ShortestPathTree> trees;
};

HalfGraph extract_half(const ProductGraph& pg, Side side, const std::vector<int>& terminals);
LayeredGraph build_layered(const HalfGraph& half, int h);
// Product edge ids, in walk order, for a layered edge.
std::vector<int> expand_layered_edge(const HalfGraph& half, const LayeredGraph& lg, int edge);

struct JoinedGraph {
    int base_root = 0;
    HalfGraph up_half;
    HalfGraph down_half;
    LayeredGraph up;
    LayeredGraph down;

    struct Vertex {
        bool is_up = true;
        int level = 0;
        int local = 0;    // local id in its half
        int product = 0;  // psi
    };
    std::vector<Vertex> vertices;

    struct JEdge {
        int from = 0;
        int to = 0;
        Rational cost;
        int half = 0;       // 0 up, 1 down, -1 bridge
        int layered = -1;   // edge index in its layered graph
    };
    std::vector<JEdge> edges;
    std::vector<std::vector<int>> out;
    std::vector<std::vector<int>> in;
    int root_up = 0;
    int root_down = 0;
    int bridge = 0;

    struct DemandGroups {
        std::vector<int> sources;  // joined vertex ids (level 0 of up)
        std::vector<int> sinks;    // joined vertex ids (level h of down)
        std::vector<std::vector<std::int64_t>> source_labels;
        std::vector<std::vector<std::int64_t>> sink_labels;
        std::vector<std::pair<int, int>> relation;  // indices into sources x sinks
    };
    std::vector<DemandGroups> demands;

    std::vector<int> expand(int joined_edge) const;  // product edge ids
    int relation_size() const;
};

// Keeps terminals that reach the root and have a relation partner; empty if none.
std::optional<JoinedGraph> build_joined(const ProductGraph& pg, int h);

int height_from_epsilon(const Rational& epsilon);

}  // namespace pcspan
