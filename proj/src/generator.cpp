#include "pcspan/generator.hpp"

#include "pcspan/errors.hpp"
#include "pcspan/rcsp.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <utility>

namespace pcspan {

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw ParameterError("empty integer range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(rng());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return lo + static_cast<std::int64_t>(x % span);
}

Regime parse_regime(const std::string& text) {
    if (text == "integer") return Regime::Integer;
    if (text == "rational") return Regime::Rational;
    if (text == "rational-negative") return Regime::RationalNegative;
    throw ParameterError("unknown regime '" + text + "'");
}

std::string regime_name(Regime regime) {
    switch (regime) {
        case Regime::Integer: return "integer";
        case Regime::Rational: return "rational";
        case Regime::RationalNegative: return "rational-negative";
    }
    return "integer";
}

namespace {

std::vector<std::pair<int, int>> backbone(std::mt19937_64& rng, int n, int extra) {
    std::vector<std::pair<int, int>> arcs;
    for (int i = 0; i < n; ++i) arcs.emplace_back(i, (i + 1) % n);
    for (int j = 0; j < extra; ++j) {
        const int u = static_cast<int>(uniform_int(rng, 0, n - 1));
        int v = static_cast<int>(uniform_int(rng, 0, n - 2));
        if (v >= u) ++v;
        arcs.emplace_back(u, v);
    }
    return arcs;
}

std::vector<std::pair<int, int>> distinct_pairs(std::mt19937_64& rng, int n, int k) {
    std::vector<std::pair<int, int>> all;
    for (int s = 0; s < n; ++s) {
        for (int t = 0; t < n; ++t) {
            if (s != t) all.emplace_back(s, t);
        }
    }
    if (k > static_cast<int>(all.size())) throw ParameterError("more demands than ordered vertex pairs");
    for (int i = 0; i < k; ++i) {
        const auto j = uniform_int(rng, i, static_cast<std::int64_t>(all.size()) - 1);
        std::swap(all[i], all[j]);
    }
    all.resize(k);
    return all;
}

// Simple s -> t path by randomized depth-first search.
std::optional<std::vector<int>> random_path(std::mt19937_64& rng, const PcsInstance& inst, int s, int t) {
    const auto out = inst.out_edges();
    std::vector<char> seen(inst.n, 0);
    std::vector<int> path;
    std::function<bool(int)> dfs = [&](int v) {
        if (v == t) return true;
        seen[v] = 1;
        auto order = out[v];
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            std::swap(order[i], order[uniform_int(rng, static_cast<std::int64_t>(i), static_cast<std::int64_t>(order.size()) - 1)]);
        }
        for (int e : order) {
            const int w = inst.edges[e].v;
            if (seen[w]) continue;
            path.push_back(e);
            if (dfs(w)) return true;
            path.pop_back();
        }
        return false;
    };
    if (!dfs(s)) return std::nullopt;
    return path;
}

}  // namespace

PcsInstance generate_instance(const GeneratorParams& p) {
    if (p.n < 2 || p.k < 0 || p.m < 0 || p.tau < 0 || p.max_length < 1 || p.max_cost < 1) {
        throw ParameterError("generator parameters must be positive (n >= 2)");
    }
    if (p.m > 0 && p.tau < 1) throw ParameterError("tau must be positive when m > 0");
    const int packing = p.packing < 0 ? (p.m + 1) / 2 : p.packing;
    if (packing > p.m) throw ParameterError("packing exceeds m");
    std::mt19937_64 rng(p.seed);
    PcsInstance inst;
    inst.n = p.n;
    inst.m = p.m;
    inst.tau = p.tau;
    inst.packing = packing;
    inst.covering = p.m - packing;
    const std::int64_t T = p.max_length;
    std::vector<Rational> potential(p.n, Rational(0));
    if (p.regime == Regime::RationalNegative) {
        for (auto& pi : potential) pi = Rational(uniform_int(rng, -2 * T, 2 * T), 2);
    }
    for (const auto& [u, v] : backbone(rng, p.n, p.extra_edges < 0 ? p.n : p.extra_edges)) {
        Edge e;
        e.u = u;
        e.v = v;
        e.r = ResourceVector::zero(p.m);
        switch (p.regime) {
            case Regime::Integer:
                e.cost = uniform_int(rng, 1, p.max_cost);
                e.r.length = uniform_int(rng, 1, T);
                break;
            case Regime::Rational: {
                const auto q = uniform_int(rng, 1, 3);
                e.cost = Rational(uniform_int(rng, 1, p.max_cost * q), q);
                e.r.length = Rational(uniform_int(rng, 1, 4 * T), uniform_int(rng, 1, 4));
                break;
            }
            case Regime::RationalNegative: {
                const auto q = uniform_int(rng, 1, 3);
                e.cost = Rational(uniform_int(rng, 1, p.max_cost * q), q);
                e.r.length = Rational(uniform_int(rng, 0, 2 * T), 2) + potential[u] - potential[v];
                break;
            }
        }
        for (int i = 0; i < p.m; ++i) {
            if (uniform_int(rng, 0, 1) == 0) continue;
            const auto mag = uniform_int(rng, 1, p.tau);
            e.r.res[i] = i < packing ? mag : -mag;
        }
        inst.edges.push_back(std::move(e));
    }
    for (const auto& [s, t] : distinct_pairs(rng, p.n, p.k)) {
        std::optional<std::vector<int>> witness;
        std::optional<std::vector<int>> last;
        for (int attempt = 0; attempt < p.retries && !witness; ++attempt) {
            auto path = random_path(rng, inst, s, t);
            if (!path) break;
            const auto used = walk_resource(Walk{s, *path}, inst);
            bool ok = true;
            for (int i = 0; i < packing; ++i) ok = ok && used.res[i] <= p.tau;
            if (ok) {
                witness = std::move(path);
            } else {
                last = std::move(path);
            }
        }
        if (!witness && last) {
            // Zero packing entries along the path, last edge first, until it fits within tau.
            for (int i = 0; i < packing; ++i) {
                auto used = walk_resource(Walk{s, *last}, inst).res[i];
                for (auto it = last->rbegin(); it != last->rend() && used > p.tau; ++it) {
                    used -= inst.edges[*it].r.res[i];
                    inst.edges[*it].r.res[i] = 0;
                }
            }
            witness = std::move(last);
        }
        if (!witness) throw InfeasibleInstanceError("no path for demand " + std::to_string(s) + "->" + std::to_string(t));
        const auto used = walk_resource(Walk{s, *witness}, inst);
        Demand d;
        d.s = s;
        d.t = t;
        d.budget = ResourceVector::zero(p.m);
        if (p.regime == Regime::Integer) {
            d.budget.length = used.length + uniform_int(rng, 0, std::max<std::int64_t>(1, T / 2));
        } else {
            const Rational extra = Rational(uniform_int(rng, 0, 2), 4) * abs(used.length) + Rational(uniform_int(rng, 0, 2), 2);
            d.budget.length = used.length + extra;
            if (d.budget.length == 0) d.budget.length = Rational(1, 2);
        }
        for (int i = 0; i < p.m; ++i) {
            const auto b = used.res[i] + uniform_int(rng, 0, 1);
            d.budget.res[i] = i < packing ? std::min(p.tau, b) : std::clamp<std::int64_t>(b, -p.tau, 0);
        }
        inst.demands.push_back(std::move(d));
    }
    validate_structure(inst);
    require_feasible_demands(inst);
    return inst;
}

RcsInstance generate_rcs(const RcsParams& p, bool feasible_only) {
    if (p.n < 2 || p.k < 0 || p.visit_groups < 0 || p.avoid_groups < 0 || p.max_group_size < 1 || p.max_length < 1) {
        throw ParameterError("invalid routing-controlled generator parameters");
    }
    std::mt19937_64 rng(p.seed);
    RcsInstance rcs;
    rcs.n = p.n;
    rcs.visit_groups = p.visit_groups;
    for (const auto& [u, v] : backbone(rng, p.n, p.extra_edges < 0 ? p.n : p.extra_edges)) {
        rcs.edges.push_back(RcsEdge{u, v, Rational(uniform_int(rng, 1, 5)), uniform_int(rng, 1, p.max_length)});
    }
    for (int g = 0; g < p.visit_groups + p.avoid_groups; ++g) {
        const auto size = uniform_int(rng, 1, std::min<std::int64_t>(p.max_group_size, p.n));
        std::vector<int> vertices(p.n);
        for (int v = 0; v < p.n; ++v) vertices[v] = v;
        for (std::int64_t i = 0; i < size; ++i) std::swap(vertices[i], vertices[uniform_int(rng, i, p.n - 1)]);
        vertices.resize(size);
        std::sort(vertices.begin(), vertices.end());
        rcs.groups.push_back(std::move(vertices));
    }
    const int m = rcs.m();
    const std::int64_t far = static_cast<std::int64_t>(p.n) * p.max_length * (p.visit_groups + 1) + 1;
    for (const auto& [s, t] : distinct_pairs(rng, p.n, p.k)) {
        RcsDemand d{s, t, std::vector<std::int64_t>(m + 1, 0)};
        bool placed = false;
        for (int attempt = 0; attempt < p.retries && !placed; ++attempt) {
            d.ctrl[0] = far;
            for (int g = 0; g < m; ++g) {
                const bool on = uniform_int(rng, 0, 1) == 1;
                const bool holds_source = std::binary_search(rcs.groups[g].begin(), rcs.groups[g].end(), s);
                d.ctrl[g + 1] = !on ? 0 : g < p.visit_groups ? 1 : holds_source ? 0 : -1;
            }
            auto walk = routing_feasible_witness(rcs, d);
            if (walk) {
                std::int64_t length = 0;
                for (int e : walk->edges) length += rcs.edges[e].length;
                d.ctrl[0] = std::max<std::int64_t>(1, length + uniform_int(rng, feasible_only ? 0 : -1, 2));
                placed = true;
            } else if (!feasible_only) {
                d.ctrl[0] = uniform_int(rng, 1, far);
                placed = true;
            }
        }
        if (!placed) throw InfeasibleInstanceError("generation retry cap reached for demand " + std::to_string(s) + "->" + std::to_string(t));
        rcs.demands.push_back(std::move(d));
    }
    validate_rcs(rcs);
    return rcs;
}

HopsetInstance generate_hopset(const HopsetParams& p) {
    if (p.n < 2 || p.k < 0 || p.beta < 1 || p.max_length < 1 || p.slack < 0) {
        throw ParameterError("invalid hopset generator parameters");
    }
    std::mt19937_64 rng(p.seed);
    HopsetInstance hs;
    hs.n = p.n;
    std::vector<std::pair<int, int>> arcs;
    switch (p.shape) {
        case HopsetShape::Path:
            for (int i = 0; i + 1 < p.n; ++i) arcs.emplace_back(i, i + 1);
            break;
        case HopsetShape::Cycle:
            for (int i = 0; i < p.n; ++i) arcs.emplace_back(i, (i + 1) % p.n);
            break;
        case HopsetShape::Random:
            arcs = backbone(rng, p.n, p.n / 2);
            break;
    }
    for (const auto& [u, v] : arcs) hs.edges.push_back(HopsetEdge{u, v, uniform_int(rng, 1, p.max_length)});
    const auto closure = weighted_transitive_closure(p.n, hs.edges);
    std::vector<std::pair<int, int>> reachable;
    for (const auto& ce : closure.edges) reachable.emplace_back(ce.u, ce.v);
    const int k = std::min<int>(p.k, static_cast<int>(reachable.size()));
    for (int i = 0; i < k; ++i) {
        std::swap(reachable[i], reachable[uniform_int(rng, i, static_cast<std::int64_t>(reachable.size()) - 1)]);
        const auto [s, t] = reachable[i];
        hs.demands.push_back(HopsetDemand{s, t, *closure.dist[s][t] + p.slack, p.beta});
    }
    validate_hopset(hs);
    return hs;
}

}  // namespace pcspan
