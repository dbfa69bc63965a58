#pragma once

#include "pcspan/model.hpp"
#include "pcspan/reductions.hpp"

#include <utility>
#include <vector>

namespace fixtures {

using pcspan::Demand;
using pcspan::Edge;
using pcspan::PcsInstance;
using pcspan::Rational;
using pcspan::ResourceVector;

inline Edge edge(int u, int v, Rational cost, Rational length, std::vector<std::int64_t> res = {}) {
    return Edge{u, v, std::move(cost), ResourceVector(std::move(length), std::move(res))};
}

inline Demand demand(int s, int t, Rational length, std::vector<std::int64_t> res = {}) {
    return Demand{s, t, ResourceVector(std::move(length), std::move(res))};
}

// s=0, a=1, t=2. s->a->t fits the budget (2,1); the direct s->t edge is too long. OPT = 2.
inline PcsInstance three_vertex() {
    PcsInstance inst;
    inst.n = 3;
    inst.m = 1;
    inst.tau = 1;
    inst.packing = 1;
    inst.covering = 0;
    inst.edges = {edge(0, 1, 1, 1, {1}), edge(1, 2, 1, 1, {0}), edge(0, 2, 1, 3, {0})};
    inst.demands = {demand(0, 2, 2, {1})};
    return inst;
}

// Demands 0->3 and 1->3 share the expensive edge 2->3; each also has a direct edge of cost 11/2.
inline PcsInstance shared_edge() {
    PcsInstance inst;
    inst.n = 4;
    inst.m = 0;
    inst.tau = 0;
    inst.edges = {edge(0, 2, 1, 1), edge(1, 2, 1, 1), edge(2, 3, 5, 1), edge(0, 3, Rational(11, 2), 1),
                  edge(1, 3, Rational(11, 2), 1)};
    inst.demands = {demand(0, 3, 4), demand(1, 3, 4)};
    return inst;
}

// Shared hub edge 0 -> 1 of cost 3, spokes s_i -> 0 and 1 -> t_i of cost 1, direct s_i -> t_i edges of cost 4.
// For k = 3 the optimum routes every demand over the hub: cost 9, density 3.
inline PcsInstance hub(int k = 3) {
    PcsInstance inst;
    inst.n = 2 + 2 * k;
    inst.m = 0;
    inst.tau = 0;
    inst.edges.push_back(edge(0, 1, 3, 1));
    for (int i = 0; i < k; ++i) {
        const int s = 2 + 2 * i;
        const int t = 3 + 2 * i;
        inst.edges.push_back(edge(s, 0, 1, 1));
        inst.edges.push_back(edge(1, t, 1, 1));
        inst.edges.push_back(edge(s, t, 4, 1));
        inst.demands.push_back(demand(s, t, 3));
    }
    return inst;
}

// Vertices a..e = 0..4, f=5, g=6, h=7, i=8; unit lengths and costs.
enum Fig1 { A, B, C, D, E, F, G, H, I };

inline pcspan::RcsInstance figure1(std::int64_t distance = 10) {
    pcspan::RcsInstance rcs;
    rcs.n = 9;
    rcs.visit_groups = 2;
    rcs.groups = {{H}, {G}};
    const std::vector<std::pair<int, int>> arcs = {{A, B}, {B, C}, {C, D}, {D, E}, {C, F},
                                                   {F, G}, {G, C}, {C, H}, {H, I}, {I, C}};
    for (auto [u, v] : arcs) rcs.edges.push_back(pcspan::RcsEdge{u, v, 1, 1});
    rcs.demands.push_back(pcspan::RcsDemand{A, E, {distance, 1, 1}});
    return rcs;
}

// a=0, b=1, c=2, d=3, r=4 with lengths {2,3,1,2,1,2,4,-3}.
inline PcsInstance figure2() {
    PcsInstance inst;
    inst.n = 5;
    inst.m = 0;
    inst.tau = 0;
    const int a = 0, b = 1, c = 2, d = 3, r = 4;
    inst.edges = {edge(a, b, 1, 2), edge(b, r, 1, 3), edge(c, a, 1, 1),  edge(c, d, 1, 2),
                  edge(d, b, 1, 1), edge(d, r, 1, 2), edge(r, a, 1, 4), edge(r, c, 1, -3)};
    inst.demands = {demand(c, r, 4)};
    return inst;
}

}  // namespace fixtures
