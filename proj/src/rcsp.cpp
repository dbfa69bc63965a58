#include "pcspan/rcsp.hpp"

#include "pcspan/errors.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace pcspan {

EdgeMask mask_from_edges(const PcsInstance& instance, const std::vector<int>& edges) {
    EdgeMask mask(instance.edges.size(), 0);
    for (int e : edges) {
        if (e < 0 || e >= static_cast<int>(instance.edges.size())) {
            throw ContractError("edge " + std::to_string(e) + " is not in the instance");
        }
        mask[e] = 1;
    }
    return mask;
}

LabelTable shortest_lengths_from(const PcsInstance& instance, int source, const EdgeMask& mask,
                                 int through_root) {
    const ConfigSpace space(instance);
    LabelTable table;
    table.n = instance.n;
    table.configs = space.size();
    table.flags = through_root >= 0 ? 2 : 1;
    const std::int64_t total = static_cast<std::int64_t>(instance.n) * table.configs * table.flags;
    table.reached.assign(total, 0);
    table.length.assign(total, Rational(0));
    table.pred_edge.assign(total, -1);
    table.pred_state.assign(total, -1);

    const auto out = instance.out_edges();
    std::vector<std::vector<std::int64_t>> decoded(table.configs);
    for (std::int64_t c = 0; c < table.configs; ++c) decoded[c] = space.decode(c);

    const int start_flag = (through_root >= 0 && source == through_root) ? 1 : 0;
    const std::int64_t start = table.state(source, 0, start_flag);
    table.reached[start] = 1;

    // FIFO label-correcting relaxation; strict improvements keep predecessor links acyclic.
    std::deque<std::int64_t> queue{start};
    std::vector<char> queued(total, 0);
    queued[start] = 1;
    std::vector<std::int64_t> next_cfg;
    while (!queue.empty()) {
        const std::int64_t st = queue.front();
        queue.pop_front();
        queued[st] = 0;
        const int flag = static_cast<int>(st % table.flags);
        const std::int64_t vc = st / table.flags;
        const int u = static_cast<int>(vc / table.configs);
        const std::int64_t cfg = vc % table.configs;
        for (int e : out[u]) {
            if (!mask.empty() && !mask[e]) continue;
            const auto& edge = instance.edges[e];
            if (!space.step(decoded[cfg], edge.r.res, next_cfg)) continue;
            const int nflag = (flag == 1 || (through_root >= 0 && edge.v == through_root)) ? 1 : 0;
            const std::int64_t nst = table.state(edge.v, space.index(next_cfg), nflag);
            Rational cand = table.length[st] + edge.r.length;
            if (!table.reached[nst] || cand < table.length[nst]) {
                table.reached[nst] = 1;
                table.length[nst] = std::move(cand);
                table.pred_edge[nst] = e;
                table.pred_state[nst] = st;
                if (!queued[nst]) {
                    queued[nst] = 1;
                    queue.push_back(nst);
                }
            }
        }
    }
    return table;
}

namespace {

std::optional<Walk> extract(const PcsInstance& instance, const Demand& demand, const LabelTable& table,
                            int flag, const Rational* theta) {
    const ConfigSpace space(instance);
    std::int64_t best = -1;
    for (std::int64_t c = 0; c < table.configs; ++c) {
        const std::int64_t st = table.state(demand.t, c, flag);
        if (!table.reached[st]) continue;
        ResourceVector used(table.length[st], space.decode(c));
        if (!within_budget(used, demand.budget, theta)) continue;
        if (best < 0 || table.length[st] < table.length[best]) best = st;
    }
    if (best < 0) return std::nullopt;
    Walk walk;
    walk.start = demand.s;
    std::int64_t st = best;
    std::int64_t guard = static_cast<std::int64_t>(table.reached.size()) + 1;
    while (table.pred_edge[st] >= 0) {
        walk.edges.push_back(table.pred_edge[st]);
        st = table.pred_state[st];
        if (--guard < 0) throw InvariantViolation("cyclic predecessor links in label table");
    }
    std::reverse(walk.edges.begin(), walk.edges.end());
    return walk;
}

}  // namespace

std::optional<Walk> feasible_witness(const PcsInstance& instance, const Demand& demand, const EdgeMask& mask,
                                     const Rational* theta) {
    const auto table = shortest_lengths_from(instance, demand.s, mask);
    return extract(instance, demand, table, 0, theta);
}

std::optional<Walk> feasible_witness_through(const PcsInstance& instance, const Demand& demand, int root,
                                             const EdgeMask& mask, const Rational* theta) {
    const auto table = shortest_lengths_from(instance, demand.s, mask, root);
    return extract(instance, demand, table, 1, theta);
}

std::vector<DemandCheck> verify_solution(const PcsInstance& instance, const std::vector<int>& subgraph,
                                         const std::optional<Rational>& theta) {
    if (theta && *theta <= 0) throw ParameterError("theta must be positive");
    const EdgeMask mask = mask_from_edges(instance, subgraph);
    std::vector<DemandCheck> out;
    for (const auto& d : instance.demands) {
        DemandCheck check;
        check.witness = feasible_witness(instance, d, mask, theta ? &*theta : nullptr);
        check.feasible = check.witness.has_value();
        out.push_back(std::move(check));
    }
    return out;
}

void require_feasible_demands(const PcsInstance& instance) {
    for (std::size_t d = 0; d < instance.demands.size(); ++d) {
        if (!feasible_witness(instance, instance.demands[d])) {
            throw InfeasibleInstanceError("demand " + std::to_string(d) + " (" +
                                          std::to_string(instance.demands[d].s) + " -> " +
                                          std::to_string(instance.demands[d].t) + ") has no feasible walk");
        }
    }
}

}  // namespace pcspan
