#include "pcspan/greedy.hpp"

#include "pcspan/errors.hpp"
#include "pcspan/exact_oracle.hpp"

#include <algorithm>
#include <set>

namespace pcspan {

SolveReport solve_pcs(const PcsInstance& instance, const SolverConfig& config) {
    SolveReport report;
    report.mode = config.mode == SolveMode::Integer ? "integer" : "theta";
    report.config = config;
    report.cost = 0;
    std::set<int> selected;
    std::vector<int> residual(instance.demands.size());
    for (std::size_t d = 0; d < residual.size(); ++d) residual[d] = static_cast<int>(d);

    for (std::uint64_t iter = 0; !residual.empty(); ++iter) {
        PcsInstance sub = instance;
        for (int e : selected) sub.edges[e].cost = 0;
        sub.demands.clear();
        for (int d : residual) sub.demands.push_back(instance.demands[d]);
        const auto result = min_density_junction_tree(sub, config, derive_seed(config.seed, iter));
        report.max_product_vertices = std::max(report.max_product_vertices, result.max_product_vertices);
        if (!result.tree) {
            if (config.roots) throw EssentialityViolation("remaining demands are not resolvable from the given roots");
            throw InvariantViolation("no root resolves any remaining demand");
        }
        const auto& tree = *result.tree;
        IterationTrace trace;
        trace.root = tree.root;
        trace.density = tree.density;
        trace.origin = tree.origin;
        for (int e : tree.edges) {
            if (selected.insert(e).second) trace.new_edges.push_back(e);
        }
        std::vector<char> done(residual.size(), 0);
        for (int local : tree.resolved) {
            done[local] = 1;
            trace.resolved.push_back(residual[local]);
        }
        std::vector<int> next;
        for (std::size_t i = 0; i < residual.size(); ++i) {
            if (!done[i]) next.push_back(residual[i]);
        }
        if (next.size() >= residual.size()) throw InvariantViolation("greedy iteration resolved nothing");
        residual.swap(next);
        report.iterations.push_back(std::move(trace));
    }
    report.edges.assign(selected.begin(), selected.end());
    for (int e : report.edges) report.cost += instance.edges[e].cost;
    std::optional<Rational> theta;
    if (config.mode == SolveMode::Theta) theta = config.theta;
    report.witnesses = verify_solution(instance, report.edges, theta);
    for (std::size_t d = 0; d < report.witnesses.size(); ++d) {
        if (!report.witnesses[d].feasible) {
            throw InvariantViolation("demand " + std::to_string(d) + " is not satisfied by the greedy solution");
        }
    }
    return report;
}

DensityLemmaReport density_lemma_check(const PcsInstance& instance, int walk_cap) {
    DensityLemmaReport out;
    out.k = static_cast<int>(instance.demands.size());
    out.opt = brute_force_opt(instance, walk_cap).cost;
    out.min_density = brute_force_min_density_junction(instance, walk_cap).density;
    out.holds = out.min_density * out.min_density * out.k <= out.opt * out.opt;
    return out;
}

}  // namespace pcspan
