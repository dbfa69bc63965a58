#include "pcspan/model.hpp"

#include "pcspan/errors.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>

namespace pcspan {

ResourceVector& ResourceVector::operator+=(const ResourceVector& other) {
    if (other.res.size() != res.size()) {
        throw ContractError("resource vector dimension mismatch");
    }
    length += other.length;
    for (std::size_t i = 0; i < res.size(); ++i) {
        res[i] += other.res[i];
    }
    return *this;
}

bool dominated_by(const ResourceVector& a, const ResourceVector& b) {
    if (a.length > b.length) return false;
    for (std::size_t i = 0; i < a.res.size(); ++i) {
        if (a.res[i] > b.res[i]) return false;
    }
    return true;
}

std::vector<std::vector<int>> PcsInstance::out_edges() const {
    std::vector<std::vector<int>> out(n);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) out[edges[e].u].push_back(e);
    return out;
}

std::vector<std::vector<int>> PcsInstance::in_edges() const {
    std::vector<std::vector<int>> in(n);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) in[edges[e].v].push_back(e);
    return in;
}

namespace {

void check_vector(const PcsInstance& inst, const ResourceVector& r, const std::string& where) {
    if (r.m() != inst.m) {
        throw InfeasibleInstanceError(where + ": expected " + std::to_string(inst.m) +
                                      " resource entries after length");
    }
    for (int i = 0; i < inst.m; ++i) {
        const auto x = r.res[i];
        if (inst.is_packing(i) ? (x < 0 || x > inst.tau) : (x > 0 || x < -inst.tau)) {
            throw InfeasibleInstanceError(where + ": resource " + std::to_string(i + 1) +
                                          " value " + std::to_string(x) + " out of range");
        }
    }
}

}  // namespace

bool has_negative_cycle(const PcsInstance& instance) {
    std::vector<Rational> dist(instance.n, Rational(0));
    for (int round = 0; round <= instance.n; ++round) {
        bool changed = false;
        for (const auto& e : instance.edges) {
            Rational cand = dist[e.u] + e.r.length;
            if (cand < dist[e.v]) {
                dist[e.v] = cand;
                changed = true;
            }
        }
        if (!changed) return false;
    }
    return true;
}

void validate_structure(const PcsInstance& inst) {
    if (inst.n < 0 || inst.m < 0 || inst.tau < 0 || inst.packing < 0 || inst.covering < 0) {
        throw InfeasibleInstanceError("negative size parameter");
    }
    if (inst.packing + inst.covering != inst.m) {
        throw InfeasibleInstanceError("packing + covering must equal m");
    }
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
        const auto& edge = inst.edges[e];
        const std::string where = "edge " + std::to_string(e);
        if (edge.u < 0 || edge.u >= inst.n || edge.v < 0 || edge.v >= inst.n) {
            throw InfeasibleInstanceError(where + ": endpoint out of range");
        }
        if (edge.cost < 0) {
            throw InfeasibleInstanceError(where + ": negative cost");
        }
        check_vector(inst, edge.r, where);
    }
    for (std::size_t d = 0; d < inst.demands.size(); ++d) {
        const auto& dem = inst.demands[d];
        const std::string where = "demand " + std::to_string(d);
        if (dem.s < 0 || dem.s >= inst.n || dem.t < 0 || dem.t >= inst.n) {
            throw InfeasibleInstanceError(where + ": endpoint out of range");
        }
        check_vector(inst, dem.budget, where);
    }
    if (has_negative_cycle(inst)) {
        throw InfeasibleInstanceError("graph has a negative-length cycle");
    }
}

int walk_end(const Walk& walk, const PcsInstance& instance) {
    int at = walk.start;
    for (int e : walk.edges) {
        if (e < 0 || e >= static_cast<int>(instance.edges.size())) {
            throw InstanceMismatch("unknown edge id " + std::to_string(e));
        }
        const auto& edge = instance.edges[e];
        if (edge.u != at) {
            throw ContractError("walk edges are not consecutive");
        }
        at = edge.v;
    }
    return at;
}

std::vector<int> walk_vertices(const Walk& walk, const PcsInstance& instance) {
    std::vector<int> out{walk.start};
    walk_end(walk, instance);
    for (int e : walk.edges) out.push_back(instance.edges[e].v);
    return out;
}

bool walk_visits(const Walk& walk, const PcsInstance& instance, int vertex) {
    const auto vs = walk_vertices(walk, instance);
    return std::find(vs.begin(), vs.end(), vertex) != vs.end();
}

Walk concat(const Walk& a, const Walk& b) {
    Walk out = a;
    out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
    return out;
}

ResourceVector walk_resource(const Walk& walk, const PcsInstance& instance) {
    ResourceVector total = ResourceVector::zero(instance.m);
    for (int e : walk.edges) {
        if (e < 0 || e >= static_cast<int>(instance.edges.size())) {
            throw InstanceMismatch("unknown edge id " + std::to_string(e));
        }
        total += instance.edges[e].r;
    }
    return total;
}

Rational theta_length_bound(const Rational& budget_length, const Rational& theta) {
    return budget_length * (1 + theta * sign(budget_length));
}

bool within_budget(const ResourceVector& used, const ResourceVector& budget, const Rational* theta) {
    const Rational bound = theta ? theta_length_bound(budget.length, *theta) : budget.length;
    if (used.length > bound) return false;
    for (std::size_t i = 0; i < used.res.size(); ++i) {
        if (used.res[i] > budget.res[i]) return false;
    }
    return true;
}

namespace {

void check_endpoints(const Walk& walk, const Demand& demand, const PcsInstance& instance) {
    if (walk.start != demand.s || walk_end(walk, instance) != demand.t) {
        throw ContractError("walk endpoints do not match the demand");
    }
}

}  // namespace

bool is_feasible(const Walk& walk, const Demand& demand, const PcsInstance& instance) {
    check_endpoints(walk, demand, instance);
    return within_budget(walk_resource(walk, instance), demand.budget);
}

bool is_theta_feasible(const Walk& walk, const Demand& demand, const PcsInstance& instance,
                       const Rational& theta) {
    if (theta <= 0) {
        throw ParameterError("theta must be positive");
    }
    check_endpoints(walk, demand, instance);
    return within_budget(walk_resource(walk, instance), demand.budget, &theta);
}

Rational budget_min(const PcsInstance& instance) {
    if (instance.demands.empty()) throw ContractError("instance has no demands");
    Rational best = abs(instance.demands.front().budget.length);
    for (const auto& d : instance.demands) best = std::min(best, Rational(abs(d.budget.length)));
    return best;
}

Rational budget_max(const PcsInstance& instance) {
    if (instance.demands.empty()) throw ContractError("instance has no demands");
    Rational best = abs(instance.demands.front().budget.length);
    for (const auto& d : instance.demands) best = std::max(best, Rational(abs(d.budget.length)));
    return best;
}

ConditionNumbers condition_numbers(const PcsInstance& instance) {
    const Rational bmin = budget_min(instance);
    if (bmin == 0) {
        throw DivisionUndefinedError("min |Bdgt[0]| is 0; eta and xi are undefined");
    }
    Rational min_len = 0;
    for (const auto& e : instance.edges) min_len = std::min(min_len, e.r.length);
    return {abs(min_len) / bmin, budget_max(instance) / bmin};
}

ConfigSpace::ConfigSpace(const PcsInstance& instance)
    : m_(instance.m), packing_(instance.packing), tau_(instance.tau), size_(1) {
    for (int i = 0; i < m_; ++i) {
        size_ *= (tau_ + 1);
        if (size_ > (std::int64_t(1) << 40)) throw ResourceLimitError("configuration space too large");
    }
}

std::int64_t ConfigSpace::index(const std::vector<std::int64_t>& config) const {
    std::int64_t idx = 0;
    for (int i = 0; i < m_; ++i) {
        const std::int64_t offset = i < packing_ ? config[i] : -config[i];
        idx = idx * (tau_ + 1) + offset;
    }
    return idx;
}

std::vector<std::int64_t> ConfigSpace::decode(std::int64_t index) const {
    std::vector<std::int64_t> config(m_);
    for (int i = m_ - 1; i >= 0; --i) {
        const std::int64_t offset = index % (tau_ + 1);
        index /= (tau_ + 1);
        config[i] = i < packing_ ? offset : -offset;
    }
    return config;
}

std::int64_t ConfigSpace::clamp_entry(int i, std::int64_t value) const {
    return i < packing_ ? value : std::max(value, -tau_);
}

bool ConfigSpace::step(const std::vector<std::int64_t>& config, const std::vector<std::int64_t>& delta,
                       std::vector<std::int64_t>& out) const {
    out.resize(m_);
    for (int i = 0; i < m_; ++i) {
        const std::int64_t v = config[i] + delta[i];
        if (i < packing_) {
            if (v > tau_) return false;
            out[i] = v;
        } else {
            out[i] = std::max(v, -tau_);
        }
    }
    return true;
}

int hop_bound(const PcsInstance& instance, int cap_factor) {
    if (instance.demands.empty()) return 1;
    const ConfigSpace space(instance);
    const std::int64_t configs = space.size();
    const std::int64_t states = static_cast<std::int64_t>(instance.n) * configs;
    const std::int64_t cap = static_cast<std::int64_t>(cap_factor) * instance.n * instance.n * configs;

    std::map<int, std::vector<int>> by_source;
    for (int d = 0; d < static_cast<int>(instance.demands.size()); ++d) {
        by_source[instance.demands[d].s].push_back(d);
    }
    std::vector<std::vector<std::int64_t>> decoded(configs);
    for (std::int64_t c = 0; c < configs; ++c) decoded[c] = space.decode(c);

    int worst = 0;
    std::vector<std::int64_t> next_cfg;
    for (const auto& [source, demand_ids] : by_source) {
        std::vector<std::optional<Rational>> dp(states);
        dp[static_cast<std::int64_t>(source) * configs + 0] = Rational(0);
        std::vector<int> pending = demand_ids;
        std::int64_t hops = 0;
        while (true) {
            std::vector<int> still;
            for (int d : pending) {
                const auto& dem = instance.demands[d];
                bool ok = false;
                for (std::int64_t c = 0; c < configs && !ok; ++c) {
                    const auto& val = dp[static_cast<std::int64_t>(dem.t) * configs + c];
                    if (!val) continue;
                    ResourceVector used(*val, decoded[c]);
                    ok = within_budget(used, dem.budget);
                }
                if (ok) {
                    worst = std::max<int>(worst, static_cast<int>(hops));
                } else {
                    still.push_back(d);
                }
            }
            pending.swap(still);
            if (pending.empty()) break;
            if (hops >= cap) {
                throw InfeasibleInstanceError("no feasible walk within the hop cap of " +
                                              std::to_string(cap) + " edges");
            }
            auto next = dp;
            bool changed = false;
            for (const auto& e : instance.edges) {
                for (std::int64_t c = 0; c < configs; ++c) {
                    const auto& val = dp[static_cast<std::int64_t>(e.u) * configs + c];
                    if (!val) continue;
                    if (!space.step(decoded[c], e.r.res, next_cfg)) continue;
                    auto& slot = next[static_cast<std::int64_t>(e.v) * configs + space.index(next_cfg)];
                    Rational cand = *val + e.r.length;
                    if (!slot || cand < *slot) {
                        slot = cand;
                        changed = true;
                    }
                }
            }
            if (!changed) {
                throw InfeasibleInstanceError("demand " + std::to_string(pending.front()) +
                                              " has no feasible walk");
            }
            dp.swap(next);
            ++hops;
        }
    }
    return worst + 1;
}

}  // namespace pcspan
