#include "pcspan/exact_oracle.hpp"

#include "pcspan/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace pcspan {

std::vector<Walk> enumerate_walks(const PcsInstance& instance, int s, int t, int max_edges, std::int64_t limit) {
    const auto out = instance.out_edges();
    std::vector<Walk> result;
    Walk cur{s, {}};
    std::function<void(int)> dfs = [&](int at) {
        if (at == t) {
            result.push_back(cur);
            if (static_cast<std::int64_t>(result.size()) > limit) throw ScaleError("walk enumeration limit exceeded");
        }
        if (static_cast<int>(cur.edges.size()) == max_edges) return;
        for (int e : out[at]) {
            cur.edges.push_back(e);
            dfs(instance.edges[e].v);
            cur.edges.pop_back();
        }
    };
    dfs(s);
    return result;
}

WalkCatalog enumerate_feasible_walks(const PcsInstance& instance, const Demand& demand, int cap, const Rational* theta,
                                     std::int64_t limit) {
    const auto out = instance.out_edges();
    bool nonnegative = true;
    for (const auto& e : instance.edges) nonnegative = nonnegative && e.r.length >= 0;
    const Rational length_bound = theta ? theta_length_bound(demand.budget.length, *theta) : demand.budget.length;
    WalkCatalog catalog;
    Walk cur{demand.s, {}};
    ResourceVector used = ResourceVector::zero(instance.m);
    std::int64_t nodes = 0;
    std::function<void(int)> dfs = [&](int at) {
        if (++nodes > 50 * limit) throw ScaleError("walk enumeration search limit exceeded");
        if (at == demand.t && within_budget(used, demand.budget, theta)) {
            catalog.walks.push_back(cur);
            if (static_cast<std::int64_t>(catalog.walks.size()) > limit) throw ScaleError("walk catalog limit exceeded");
        }
        if (static_cast<int>(cur.edges.size()) == cap) return;
        for (int e : out[at]) {
            const auto& edge = instance.edges[e];
            used += edge.r;
            bool prune = nonnegative && used.length > length_bound;
            for (int i = 0; i < instance.packing && !prune; ++i) prune = used.res[i] > demand.budget.res[i];
            if (!prune) {
                cur.edges.push_back(e);
                dfs(edge.v);
                cur.edges.pop_back();
            }
            used.length -= edge.r.length;
            for (int i = 0; i < instance.m; ++i) used.res[i] -= edge.r.res[i];
        }
    };
    dfs(demand.s);
    return catalog;
}

std::vector<std::vector<int>> minimal_edge_sets(const std::vector<Walk>& walks) {
    std::set<std::vector<int>> distinct;
    for (const auto& w : walks) {
        std::vector<int> s = w.edges;
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        distinct.insert(std::move(s));
    }
    std::vector<std::vector<int>> sets(distinct.begin(), distinct.end());
    std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    std::vector<std::vector<int>> minimal;
    for (const auto& s : sets) {
        bool dominated = false;
        for (const auto& m : minimal) {
            if (std::includes(s.begin(), s.end(), m.begin(), m.end())) {
                dominated = true;
                break;
            }
        }
        if (!dominated) minimal.push_back(s);
    }
    return minimal;
}

OptResult min_cost_union(const PcsInstance& instance, const std::vector<std::vector<std::vector<int>>>& choices,
                         std::int64_t limit) {
    OptResult best;
    bool found = false;
    std::vector<int> order(choices.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return choices[a].size() < choices[b].size(); });
    for (const auto& c : choices) {
        if (c.empty()) throw InfeasibleInstanceError("a demand has no feasible walk within the oracle cap");
    }
    std::vector<int> count(instance.edges.size(), 0);
    Rational cost = 0;
    std::int64_t nodes = 0;
    std::function<void(std::size_t)> dfs = [&](std::size_t depth) {
        if (++nodes > limit) throw ScaleError("brute-force search exceeded " + std::to_string(limit) + " nodes");
        if (found && cost >= best.cost) return;
        if (depth == order.size()) {
            found = true;
            best.cost = cost;
            best.edges.clear();
            for (std::size_t e = 0; e < count.size(); ++e) {
                if (count[e] > 0) best.edges.push_back(static_cast<int>(e));
            }
            return;
        }
        const auto& options = choices[order[depth]];
        for (const auto& set : options) {
            bool covered = true;
            for (int e : set) covered = covered && count[e] > 0;
            if (covered) {
                dfs(depth + 1);
                return;
            }
        }
        for (const auto& set : options) {
            for (int e : set) {
                if (count[e]++ == 0) cost += instance.edges[e].cost;
            }
            dfs(depth + 1);
            for (int e : set) {
                if (--count[e] == 0) cost -= instance.edges[e].cost;
            }
        }
    };
    dfs(0);
    return best;
}

OptResult brute_force_opt(const PcsInstance& instance, int cap, std::int64_t limit) {
    std::vector<std::vector<std::vector<int>>> choices;
    for (const auto& d : instance.demands) {
        choices.push_back(minimal_edge_sets(enumerate_feasible_walks(instance, d, cap).walks));
    }
    return min_cost_union(instance, choices, limit);
}

DensityResult brute_force_min_density_junction(const PcsInstance& instance, int cap, std::int64_t limit) {
    const int k = static_cast<int>(instance.demands.size());
    if (k == 0) throw ContractError("no demands");
    if (k > 20) throw ScaleError("too many demands for subset enumeration");
    std::vector<std::vector<Walk>> catalogs;
    for (const auto& d : instance.demands) catalogs.push_back(enumerate_feasible_walks(instance, d, cap).walks);
    DensityResult best;
    for (int r = 0; r < instance.n; ++r) {
        std::vector<std::vector<std::vector<int>>> through(k);
        for (int d = 0; d < k; ++d) {
            std::vector<Walk> via;
            for (const auto& w : catalogs[d]) {
                if (walk_visits(w, instance, r)) via.push_back(w);
            }
            through[d] = minimal_edge_sets(via);
        }
        for (int mask = 1; mask < (1 << k); ++mask) {
            std::vector<std::vector<std::vector<int>>> choices;
            std::vector<int> members;
            bool ok = true;
            for (int d = 0; d < k && ok; ++d) {
                if (!(mask >> d & 1)) continue;
                ok = !through[d].empty();
                choices.push_back(through[d]);
                members.push_back(d);
            }
            if (!ok) continue;
            const auto u = min_cost_union(instance, choices, limit);
            const Rational density = u.cost / static_cast<int>(members.size());
            if (best.root < 0 || density < best.density) {
                best.root = r;
                best.density = density;
                best.demands = members;
                best.edges = u.edges;
            }
        }
    }
    if (best.root < 0) throw InfeasibleInstanceError("no demand has a feasible walk within the oracle cap");
    return best;
}

}  // namespace pcspan
