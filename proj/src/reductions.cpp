#include "pcspan/reductions.hpp"

#include "pcspan/errors.hpp"
#include "pcspan/rcsp.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <set>

namespace pcspan {

namespace {

bool contains(const std::vector<int>& group, int v) { return std::find(group.begin(), group.end(), v) != group.end(); }

using Entry = std::pair<std::int64_t, std::int64_t>;  // (distance, state)

}  // namespace

void validate_rcs(const RcsInstance& rcs) {
    const int m = rcs.m();
    if (rcs.n < 0) throw InfeasibleInstanceError("negative vertex count");
    if (rcs.visit_groups < 0 || rcs.visit_groups > m) throw InfeasibleInstanceError("visit group count out of range");
    if (rcs.visit_groups > 20) throw InfeasibleInstanceError("at most 20 must-visit groups are supported");
    for (std::size_t g = 0; g < rcs.groups.size(); ++g) {
        std::set<int> seen;
        for (int v : rcs.groups[g]) {
            if (v < 0 || v >= rcs.n) throw InfeasibleInstanceError("group " + std::to_string(g) + ": vertex out of range");
            if (!seen.insert(v).second) throw InfeasibleInstanceError("group " + std::to_string(g) + ": duplicate vertex");
        }
    }
    for (std::size_t e = 0; e < rcs.edges.size(); ++e) {
        const auto& edge = rcs.edges[e];
        const std::string where = "edge " + std::to_string(e);
        if (edge.u < 0 || edge.u >= rcs.n || edge.v < 0 || edge.v >= rcs.n) {
            throw InfeasibleInstanceError(where + ": endpoint out of range");
        }
        if (edge.cost < 0) throw InfeasibleInstanceError(where + ": negative cost");
        if (edge.length <= 0) throw InfeasibleInstanceError(where + ": length must be a positive integer");
    }
    for (std::size_t d = 0; d < rcs.demands.size(); ++d) {
        const auto& dem = rcs.demands[d];
        const std::string where = "demand " + std::to_string(d);
        if (dem.s < 0 || dem.s >= rcs.n || dem.t < 0 || dem.t >= rcs.n) {
            throw InfeasibleInstanceError(where + ": endpoint out of range");
        }
        if (static_cast<int>(dem.ctrl.size()) != m + 1) throw InfeasibleInstanceError(where + ": ctrl needs m+1 entries");
        if (dem.ctrl[0] <= 0) throw InfeasibleInstanceError(where + ": distance control must be positive");
        for (int i = 1; i <= m; ++i) {
            const bool visit = i <= rcs.visit_groups;
            const auto c = dem.ctrl[i];
            if (visit ? (c != 0 && c != 1) : (c != 0 && c != -1)) {
                throw InfeasibleInstanceError(where + ": ctrl entry " + std::to_string(i) + " out of range");
            }
        }
    }
}

bool is_routing_feasible(const Walk& walk, const RcsDemand& demand, const RcsInstance& rcs) {
    if (walk.start != demand.s) return false;
    std::vector<char> visited(rcs.n, 0);
    visited[walk.start] = 1;
    int at = walk.start;
    std::int64_t length = 0;
    for (int e : walk.edges) {
        if (e < 0 || e >= static_cast<int>(rcs.edges.size())) return false;
        const auto& edge = rcs.edges[e];
        if (edge.u != at) return false;
        at = edge.v;
        visited[at] = 1;
        length += edge.length;
    }
    if (at != demand.t || length > demand.ctrl[0]) return false;
    for (int g = 0; g < rcs.m(); ++g) {
        bool touched = false;
        for (int v : rcs.groups[g]) touched = touched || visited[v];
        const auto c = demand.ctrl[g + 1];
        if (g < rcs.visit_groups && c == 1 && !touched) return false;
        if (g >= rcs.visit_groups && c == -1 && touched) return false;
    }
    return true;
}

std::optional<Walk> routing_feasible_witness(const RcsInstance& rcs, const RcsDemand& demand,
                                             const std::vector<char>& edge_mask) {
    const int c = rcs.visit_groups;
    const std::int64_t masks = std::int64_t{1} << c;
    std::vector<char> forbidden(rcs.n, 0);
    for (int g = c; g < rcs.m(); ++g) {
        if (demand.ctrl[g + 1] == -1) {
            for (int v : rcs.groups[g]) forbidden[v] = 1;
        }
    }
    if (forbidden[demand.s] || forbidden[demand.t]) return std::nullopt;
    std::vector<std::int64_t> bits(rcs.n, 0);
    for (int g = 0; g < c; ++g) {
        for (int v : rcs.groups[g]) bits[v] |= std::int64_t{1} << g;
    }
    std::int64_t required = 0;
    for (int g = 0; g < c; ++g) {
        if (demand.ctrl[g + 1] == 1) required |= std::int64_t{1} << g;
    }
    std::vector<std::vector<int>> out(rcs.n);
    for (std::size_t e = 0; e < rcs.edges.size(); ++e) {
        if (!edge_mask.empty() && !edge_mask[e]) continue;
        if (forbidden[rcs.edges[e].v]) continue;
        out[rcs.edges[e].u].push_back(static_cast<int>(e));
    }
    const std::int64_t states = rcs.n * masks;
    constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> dist(states, inf);
    std::vector<int> pred_edge(states, -1);
    std::vector<std::int64_t> pred_state(states, -1);
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    const std::int64_t start = demand.s * masks + bits[demand.s];
    dist[start] = 0;
    queue.push({0, start});
    while (!queue.empty()) {
        const auto [d, state] = queue.top();
        queue.pop();
        if (d != dist[state]) continue;
        const int v = static_cast<int>(state / masks);
        const std::int64_t mask = state % masks;
        for (int e : out[v]) {
            const auto& edge = rcs.edges[e];
            const std::int64_t next = edge.v * masks + (mask | bits[edge.v]);
            const std::int64_t nd = d + edge.length;
            if (nd < dist[next]) {
                dist[next] = nd;
                pred_edge[next] = e;
                pred_state[next] = state;
                queue.push({nd, next});
            }
        }
    }
    std::int64_t best = -1;
    for (std::int64_t mask = 0; mask < masks; ++mask) {
        if ((mask & required) != required) continue;
        const std::int64_t state = demand.t * masks + mask;
        if (dist[state] <= demand.ctrl[0] && (best < 0 || dist[state] < dist[best])) best = state;
    }
    if (best < 0) return std::nullopt;
    Walk walk{demand.s, {}};
    for (std::int64_t s = best; s != start; s = pred_state[s]) walk.edges.push_back(pred_edge[s]);
    std::reverse(walk.edges.begin(), walk.edges.end());
    return walk;
}

RcsReduction rcs_to_pcs(const RcsInstance& rcs, AvoidBudget avoid_budget) {
    validate_rcs(rcs);
    const int m = rcs.m();
    const int c = rcs.visit_groups;
    const int p = rcs.avoid_groups();
    RcsReduction out;
    out.resource_of_group.resize(m);
    for (int g = 0; g < m; ++g) out.resource_of_group[g] = g < c ? p + g : g - c;
    std::size_t largest = 0;
    for (const auto& group : rcs.groups) largest = std::max(largest, group.size());
    auto& pcs = out.pcs;
    pcs.n = rcs.n;
    pcs.m = m;
    pcs.packing = p;
    pcs.covering = c;
    pcs.tau = std::max<std::int64_t>(1, static_cast<std::int64_t>(m) * static_cast<std::int64_t>(largest));
    for (const auto& edge : rcs.edges) {
        Edge pe;
        pe.u = edge.u;
        pe.v = edge.v;
        pe.cost = edge.cost;
        pe.r = ResourceVector::zero(m);
        pe.r.length = edge.length;
        for (int g = 0; g < m; ++g) {
            if (contains(rcs.groups[g], edge.v)) pe.r.res[out.resource_of_group[g]] = g < c ? -1 : 1;
        }
        pcs.edges.push_back(std::move(pe));
    }
    const std::int64_t factor = avoid_budget == AvoidBudget::ControlsTimesGroup ? m : c;
    for (const auto& dem : rcs.demands) {
        Demand pd;
        pd.s = dem.s;
        pd.t = dem.t;
        pd.budget = ResourceVector::zero(m);
        pd.budget.length = dem.ctrl[0];
        for (int g = 0; g < m; ++g) {
            std::int64_t b = 0;
            if (g < c) {
                b = dem.ctrl[g + 1] == 1 && !contains(rcs.groups[g], dem.s) ? -1 : 0;
            } else {
                if (dem.ctrl[g + 1] == -1 && contains(rcs.groups[g], dem.s)) {
                    throw ContractError("demand source lies in a forbidden group");
                }
                b = dem.ctrl[g + 1] == -1 ? 0 : factor * static_cast<std::int64_t>(rcs.groups[g].size());
            }
            pd.budget.res[out.resource_of_group[g]] = b;
        }
        pcs.demands.push_back(std::move(pd));
    }
    return out;
}

SolveReport solve_rcs(const RcsInstance& rcs, const SolverConfig& config) {
    validate_rcs(rcs);
    for (std::size_t d = 0; d < rcs.demands.size(); ++d) {
        if (!routing_feasible_witness(rcs, rcs.demands[d])) {
            throw InfeasibleInstanceError("demand " + std::to_string(d) + " has no routing-feasible walk");
        }
    }
    const auto reduction = rcs_to_pcs(rcs);
    SolverConfig cfg = config;
    cfg.mode = SolveMode::Integer;
    auto report = solve_pcs(reduction.pcs, cfg);
    std::vector<char> mask(rcs.edges.size(), 0);
    for (int e : report.edges) mask[e] = 1;
    for (std::size_t d = 0; d < rcs.demands.size(); ++d) {
        const auto& check = report.witnesses[d];
        if (check.witness && is_routing_feasible(*check.witness, rcs.demands[d], rcs)) continue;
        auto walk = routing_feasible_witness(rcs, rcs.demands[d], mask);
        if (!walk) throw InvariantViolation("demand " + std::to_string(d) + " is not routing-feasible in the solution");
        report.witnesses[d].witness = std::move(walk);
    }
    return report;
}

void validate_hopset(const HopsetInstance& hs) {
    if (hs.n < 0) throw InfeasibleInstanceError("negative vertex count");
    for (std::size_t e = 0; e < hs.edges.size(); ++e) {
        const auto& edge = hs.edges[e];
        const std::string where = "edge " + std::to_string(e);
        if (edge.u < 0 || edge.u >= hs.n || edge.v < 0 || edge.v >= hs.n) {
            throw InfeasibleInstanceError(where + ": endpoint out of range");
        }
        if (edge.length <= 0) throw InfeasibleInstanceError(where + ": length must be a positive integer");
    }
    for (std::size_t d = 0; d < hs.demands.size(); ++d) {
        const auto& dem = hs.demands[d];
        const std::string where = "demand " + std::to_string(d);
        if (dem.s < 0 || dem.s >= hs.n || dem.t < 0 || dem.t >= hs.n) {
            throw InfeasibleInstanceError(where + ": endpoint out of range");
        }
        if (dem.dist <= 0 || dem.beta <= 0) throw InfeasibleInstanceError(where + ": dist and beta must be positive");
    }
}

WeightedClosure weighted_transitive_closure(int n, const std::vector<HopsetEdge>& edges) {
    WeightedClosure out;
    out.n = n;
    out.dist.assign(n, std::vector<std::optional<std::int64_t>>(n));
    std::vector<std::vector<int>> adj(n);
    for (std::size_t e = 0; e < edges.size(); ++e) adj[edges[e].u].push_back(static_cast<int>(e));
    for (int s = 0; s < n; ++s) {
        auto& dist = out.dist[s];
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
        dist[s] = 0;
        queue.push({0, s});
        while (!queue.empty()) {
            const auto [d, v] = queue.top();
            queue.pop();
            if (d != *dist[v]) continue;
            for (int e : adj[v]) {
                const int w = edges[e].v;
                const std::int64_t nd = d + edges[e].length;
                if (!dist[w] || nd < *dist[w]) {
                    dist[w] = nd;
                    queue.push({nd, w});
                }
            }
        }
    }
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u == v || !out.dist[u][v]) continue;
            ClosureEdge ce{u, v, *out.dist[u][v], 1};
            for (const auto& e : edges) {
                if (e.u == u && e.v == v && e.length == ce.weight) ce.cost = 0;
            }
            out.edges.push_back(ce);
        }
    }
    return out;
}

HopsetReduction hopset_to_pcs(const HopsetInstance& hs) {
    validate_hopset(hs);
    HopsetReduction out;
    out.closure = weighted_transitive_closure(hs.n, hs.edges);
    auto& pcs = out.pcs;
    pcs.n = hs.n;
    pcs.m = 1;
    pcs.packing = 1;
    pcs.covering = 0;
    pcs.tau = 1;
    for (const auto& d : hs.demands) pcs.tau = std::max(pcs.tau, d.beta);
    for (const auto& e : hs.edges) {
        pcs.edges.push_back(Edge{e.u, e.v, 0, ResourceVector(e.length, {1})});
        out.added_pair.emplace_back(-1, -1);
    }
    for (const auto& ce : out.closure.edges) {
        if (ce.cost == 0) continue;
        pcs.edges.push_back(Edge{ce.u, ce.v, 1, ResourceVector(ce.weight, {1})});
        out.added_pair.emplace_back(ce.u, ce.v);
    }
    for (const auto& d : hs.demands) pcs.demands.push_back(Demand{d.s, d.t, ResourceVector(d.dist, {d.beta})});
    validate_structure(pcs);
    require_feasible_demands(pcs);
    return out;
}

std::vector<bool> verify_hopset(const HopsetInstance& hs, const std::vector<std::pair<int, int>>& added) {
    const auto closure = weighted_transitive_closure(hs.n, hs.edges);
    std::vector<HopsetEdge> all = hs.edges;
    for (const auto& [u, v] : added) {
        if (u < 0 || u >= hs.n || v < 0 || v >= hs.n || u == v || !closure.dist[u][v]) {
            throw ContractError("added pair is not a closure edge");
        }
        all.push_back(HopsetEdge{u, v, *closure.dist[u][v]});
    }
    std::vector<bool> result;
    for (const auto& d : hs.demands) {
        std::vector<std::optional<std::int64_t>> dist(hs.n);
        dist[d.s] = 0;
        for (std::int64_t round = 0; round < d.beta; ++round) {
            auto next = dist;
            for (const auto& e : all) {
                if (!dist[e.u]) continue;
                const std::int64_t nd = *dist[e.u] + e.length;
                if (!next[e.v] || nd < *next[e.v]) next[e.v] = nd;
            }
            dist.swap(next);
        }
        result.push_back(dist[d.t] && *dist[d.t] <= d.dist);
    }
    return result;
}

HopsetSolution solve_hopset(const HopsetInstance& hs, const SolverConfig& config) {
    const auto reduction = hopset_to_pcs(hs);
    SolverConfig cfg = config;
    cfg.mode = SolveMode::Integer;
    HopsetSolution out;
    out.report = solve_pcs(reduction.pcs, cfg);
    for (int e : out.report.edges) {
        if (reduction.added_pair[e].first >= 0) out.added.push_back(reduction.added_pair[e]);
    }
    std::sort(out.added.begin(), out.added.end());
    const auto ok = verify_hopset(hs, out.added);
    for (std::size_t d = 0; d < ok.size(); ++d) {
        if (!ok[d]) throw InvariantViolation("hopset demand " + std::to_string(d) + " fails verification");
    }
    return out;
}

std::optional<std::vector<std::pair<int, int>>> exact_min_hopset(const HopsetInstance& hs, int max_candidates) {
    validate_hopset(hs);
    const auto closure = weighted_transitive_closure(hs.n, hs.edges);
    std::vector<std::pair<int, int>> candidates;
    for (const auto& ce : closure.edges) {
        if (ce.cost == 1) candidates.emplace_back(ce.u, ce.v);
    }
    const int total = static_cast<int>(candidates.size());
    if (total > max_candidates) return std::nullopt;
    auto all_ok = [&](const std::vector<std::pair<int, int>>& added) {
        const auto ok = verify_hopset(hs, added);
        return std::all_of(ok.begin(), ok.end(), [](bool b) { return b; });
    };
    for (int size = 0; size <= total; ++size) {
        std::vector<int> pick(size);
        for (int i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            std::vector<std::pair<int, int>> added;
            for (int i : pick) added.push_back(candidates[i]);
            if (all_ok(added)) return added;
            int i = size - 1;
            while (i >= 0 && pick[i] == total - size + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    throw InfeasibleInstanceError("hopset demands are unsatisfiable even with the full closure");
}

}  // namespace pcspan
