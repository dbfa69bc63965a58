#include "pcspan/junction.hpp"

#include "pcspan/errors.hpp"
#include "pcspan/height_reduction.hpp"
#include "pcspan/product_graph.hpp"
#include "pcspan/scaling.hpp"

#include <algorithm>
#include <future>

namespace pcspan {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

struct Prepared {
    LayerSpec spec;
    bool theta_mode = false;
    Rational theta;
};

Prepared prepare(const PcsInstance& instance, const SolverConfig& config) {
    Prepared p;
    if (config.mode == SolveMode::Integer) {
        p.spec = integer_layers(instance);
    } else {
        p.theta_mode = true;
        p.theta = config.theta;
        p.spec = scaled_layers(scale_instance(instance, config.theta));
    }
    return p;
}

bool better(const std::optional<JunctionTree>& cand, const std::optional<JunctionTree>& best) {
    if (!cand) return false;
    if (!best) return true;
    return cand->density < best->density;
}

std::vector<std::optional<JunctionTree>> direct_path_trees(const PcsInstance& instance, const ProductGraph& pg,
                                                           const JoinedGraph& jg, const Rational* theta) {
    std::vector<Arc> arcs;
    for (int e = 0; e < static_cast<int>(pg.edges.size()); ++e) {
        if (e == pg.dummy_edge) continue;
        arcs.push_back({pg.edges[e].from, pg.edges[e].to, pg.edges[e].cost, e});
    }
    const Digraph g(static_cast<int>(pg.vertices.size()), std::move(arcs));
    const auto to_root = dijkstra(g, pg.root_left, false);
    const auto from_root = dijkstra(g, pg.root_right, true);
    std::vector<std::optional<JunctionTree>> out;
    for (int d = 0; d < static_cast<int>(jg.demands.size()); ++d) {
        const auto& groups = jg.demands[d];
        int best_s = -1, best_t = -1;
        Rational best_cost;
        for (auto [a, b] : groups.relation) {
            const int s = jg.vertices[groups.sources[a]].product;
            const int t = jg.vertices[groups.sinks[b]].product;
            if (!to_root.reached[s] || !from_root.reached[t]) continue;
            Rational cost = to_root.dist[s] + from_root.dist[t];
            if (best_s < 0 || cost < best_cost) {
                best_s = s;
                best_t = t;
                best_cost = cost;
            }
        }
        if (best_s < 0) continue;
        std::vector<int> base;
        for (int a : to_root.path(g, best_s)) {
            const int pe = g.arcs[a].id;
            if (pg.edges[pe].base_edge >= 0) base.push_back(pg.edges[pe].base_edge);
        }
        for (int a : from_root.path(g, best_t)) {
            const int pe = g.arcs[a].id;
            if (pg.edges[pe].base_edge >= 0) base.push_back(pg.edges[pe].base_edge);
        }
        out.push_back(assemble_from_base_edges(instance, pg.root, std::move(base), {d}, theta, "direct-path"));
    }
    return out;
}

std::optional<JunctionTree> tree_at_root(const PcsInstance& instance, const SolverConfig& config, const Prepared& prep,
                                         int root, std::uint64_t seed, RootStats& stats) {
    stats.root = root;
    ProductConfig pc;
    pc.max_vertices = config.max_product_vertices;
    const ProductGraph pg = build_product_graph(instance, prep.spec, root, pc);
    stats.product_vertices = static_cast<std::int64_t>(pg.vertices.size());
    const int h = height_from_epsilon(config.epsilon);
    const auto jg = build_joined(pg, h);
    if (!jg) return std::nullopt;
    stats.relation_pairs = jg->relation_size();
    const Rational* theta = prep.theta_mode ? &prep.theta : nullptr;

    std::optional<JunctionTree> best;
    const LabelCoverLp lp = build_lp(*jg);
    stats.lp_variables = lp.lp.num_variables();
    stats.lp_rows = static_cast<int>(lp.lp.rows.size());
    const LpSolution sol = solve_lp(lp.lp, config.backend);
    if (sol.status != LpStatus::Optimal) throw InvariantViolation("LP (5) is not optimal at root " + std::to_string(root));
    std::vector<Rational> gamma(jg->demands.size(), Rational(0));
    for (const auto& pv : lp.y) gamma[pv.demand] += sol.values[pv.var];
    const auto pruned = prune_all(*jg, lp, sol, pg.budget_caps, instance.m);
    for (const auto& p : pruned) stats.mass_deficit = stats.mass_deficit || p.mass_deficit;
    std::vector<Rational> x;
    for (int v : lp.x) x.push_back(sol.values[v]);
    const Bucketing bucketing = bucket_and_scale(gamma, x, instance.m, static_cast<int>(instance.demands.size()));
    try {
        const auto rounded = gst_round(*jg, lp, sol, pruned, bucketing, seed, config.rounding_retries);
        best = assemble_junction_tree(instance, pg, *jg, rounded, theta);
    } catch (const RoundingFailure&) {
        stats.rounding_failed = true;
    }
    for (auto& cand : direct_path_trees(instance, pg, *jg, theta)) {
        if (better(cand, best)) best = std::move(cand);
    }
    return best;
}

}  // namespace

std::optional<JunctionTree> junction_tree_at_root(const PcsInstance& instance, const SolverConfig& config, int root,
                                                  std::uint64_t seed, RootStats* stats) {
    RootStats local;
    const Prepared prep = prepare(instance, config);
    auto tree = tree_at_root(instance, config, prep, root, seed, stats ? *stats : local);
    return tree;
}

JunctionResult min_density_junction_tree(const PcsInstance& instance, const SolverConfig& config, std::uint64_t seed) {
    JunctionResult result;
    if (instance.demands.empty()) return result;
    const Prepared prep = prepare(instance, config);
    std::vector<int> roots;
    if (config.roots) {
        roots = *config.roots;
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    } else {
        for (int r = 0; r < instance.n; ++r) roots.push_back(r);
    }
    std::vector<std::optional<JunctionTree>> trees(roots.size());
    result.roots.resize(roots.size());
    auto run = [&](std::size_t i) {
        trees[i] = tree_at_root(instance, config, prep, roots[i], derive_seed(seed, roots[i]), result.roots[i]);
    };
    const int workers = std::max(1, config.workers);
    if (workers == 1) {
        for (std::size_t i = 0; i < roots.size(); ++i) run(i);
    } else {
        for (std::size_t start = 0; start < roots.size(); start += workers) {
            std::vector<std::future<void>> batch;
            for (std::size_t i = start; i < std::min(roots.size(), start + workers); ++i) {
                batch.push_back(std::async(std::launch::async, run, i));
            }
            for (auto& f : batch) f.get();
        }
    }
    for (std::size_t i = 0; i < roots.size(); ++i) {
        result.max_product_vertices = std::max(result.max_product_vertices, result.roots[i].product_vertices);
        if (better(trees[i], result.tree)) result.tree = std::move(trees[i]);
    }
    return result;
}

}  // namespace pcspan
