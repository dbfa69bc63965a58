#include "pcspan/density_lp.hpp"

#include "pcspan/errors.hpp"
#include "pcspan/rcsp.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <set>

namespace pcspan {

namespace {

std::vector<char> joined_reach(const JoinedGraph& jg, int start, bool forward) {
    std::vector<char> seen(jg.vertices.size(), 0);
    std::deque<int> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int e : forward ? jg.out[v] : jg.in[v]) {
            if (e == jg.bridge) continue;
            const int w = forward ? jg.edges[e].to : jg.edges[e].from;
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
        }
    }
    return seen;
}

void add_flow_system(LabelCoverLp& out, const JoinedGraph& jg, int demand, bool source_side, int terminal,
                     int start, int end, int z_var, const std::vector<char>& shared) {
    const auto own = source_side ? joined_reach(jg, start, true) : joined_reach(jg, end, false);
    LabelCoverLp::FlowSystem fs;
    fs.demand = demand;
    fs.source_side = source_side;
    fs.terminal = terminal;
    fs.start = start;
    fs.end = end;
    std::vector<int> support;
    for (int v = 0; v < static_cast<int>(jg.vertices.size()); ++v) {
        if (own[v] && shared[v]) support.push_back(v);
    }
    std::vector<char> in_support(jg.vertices.size(), 0);
    for (int v : support) in_support[v] = 1;
    for (int v : support) {
        for (int e : jg.out[v]) {
            if (e == jg.bridge || !in_support[jg.edges[e].to]) continue;
            fs.edges.push_back(e);
            fs.vars.push_back(out.lp.add_variable(Rational(0)));
        }
    }
    // Conservation: out - in = z at start, 0 at interior vertices; the end row is implied.
    std::map<int, LpRow> rows;
    for (int v : support) {
        if (v == end) continue;
        rows[v].sense = RowSense::Eq;
        rows[v].rhs = 0;
    }
    for (std::size_t k = 0; k < fs.edges.size(); ++k) {
        const auto& e = jg.edges[fs.edges[k]];
        if (e.from != end) rows[e.from].terms.emplace_back(fs.vars[k], 1);
        if (e.to != end) rows[e.to].terms.emplace_back(fs.vars[k], -1);
        out.lp.add_row({{{fs.vars[k], 1}, {out.x[fs.edges[k]], -1}}, RowSense::Le, Rational(0)});
    }
    rows[start].terms.emplace_back(z_var, -1);
    for (auto& [v, row] : rows) out.lp.add_row(std::move(row));
    out.flows.push_back(std::move(fs));
}

}  // namespace

LabelCoverLp build_lp(const JoinedGraph& jg) {
    if (jg.relation_size() == 0) throw ContractError("no relation pairs at this root");
    LabelCoverLp out;
    for (const auto& e : jg.edges) out.x.push_back(out.lp.add_variable(e.cost));
    const int k = static_cast<int>(jg.demands.size());
    out.z_source.resize(k);
    out.z_sink.resize(k);
    out.flow_of_source.resize(k);
    out.flow_of_sink.resize(k);
    LpRow normal{{}, RowSense::Eq, Rational(1)};
    for (int d = 0; d < k; ++d) {
        const auto& g = jg.demands[d];
        for (std::size_t i = 0; i < g.sources.size(); ++i) out.z_source[d].push_back(out.lp.add_variable(Rational(0)));
        for (std::size_t j = 0; j < g.sinks.size(); ++j) out.z_sink[d].push_back(out.lp.add_variable(Rational(0)));
        std::vector<LpRow> by_source(g.sources.size(), LpRow{{}, RowSense::Le, Rational(0)});
        std::vector<LpRow> by_sink(g.sinks.size(), LpRow{{}, RowSense::Le, Rational(0)});
        for (auto [a, b] : g.relation) {
            const int var = out.lp.add_variable(Rational(0));
            out.y.push_back({d, a, b, var});
            normal.terms.emplace_back(var, 1);
            by_source[a].terms.emplace_back(var, 1);
            by_sink[b].terms.emplace_back(var, 1);
        }
        for (std::size_t i = 0; i < g.sources.size(); ++i) {
            by_source[i].terms.emplace_back(out.z_source[d][i], -1);
            out.lp.add_row(std::move(by_source[i]));
        }
        for (std::size_t j = 0; j < g.sinks.size(); ++j) {
            by_sink[j].terms.emplace_back(out.z_sink[d][j], -1);
            out.lp.add_row(std::move(by_sink[j]));
        }
    }
    out.lp.add_row(std::move(normal));

    const auto to_root = joined_reach(jg, jg.root_up, false);
    const auto from_root = joined_reach(jg, jg.root_down, true);
    for (int d = 0; d < k; ++d) {
        const auto& g = jg.demands[d];
        for (std::size_t i = 0; i < g.sources.size(); ++i) {
            out.flow_of_source[d].push_back(static_cast<int>(out.flows.size()));
            add_flow_system(out, jg, d, true, static_cast<int>(i), g.sources[i], jg.root_up, out.z_source[d][i], to_root);
        }
        for (std::size_t j = 0; j < g.sinks.size(); ++j) {
            out.flow_of_sink[d].push_back(static_cast<int>(out.flows.size()));
            add_flow_system(out, jg, d, false, static_cast<int>(j), jg.root_down, g.sinks[j], out.z_sink[d][j], from_root);
        }
    }
    return out;
}

std::vector<Representative> sort_representatives(std::vector<Representative> reps, int c) {
    std::sort(reps.begin(), reps.end(), [c](const Representative& a, const Representative& b) {
        if (a.label[c] != b.label[c]) return a.label[c] < b.label[c];
        if (a.label != b.label) return a.label < b.label;
        return a.id < b.id;
    });
    return reps;
}

std::int64_t median_consumption(const std::vector<Representative>& sorted, const Rational& lambda, int c) {
    if (lambda <= 0) throw ContractError("lambda must be positive");
    Rational cumulative = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        cumulative += sorted[i].mass;
        const bool group_end = i + 1 == sorted.size() || sorted[i + 1].label[c] != sorted[i].label[c];
        if (group_end && cumulative >= lambda) return sorted[i].label[c];
    }
    throw MassDeficitError("representative mass " + to_string(cumulative) + " is below lambda " + to_string(lambda));
}

PrunedDemand prune(const PruneInput& in, int m) {
    PrunedDemand out;
    std::vector<Rational> mass_s(in.source_labels.size(), Rational(0)), mass_t(in.sink_labels.size(), Rational(0));
    for (std::size_t p = 0; p < in.relation.size(); ++p) {
        out.gamma += in.y[p];
        mass_s[in.relation[p].first] += in.y[p];
        mass_t[in.relation[p].second] += in.y[p];
    }
    if (out.gamma <= 0) throw ContractError("prune needs gamma > 0");
    for (std::size_t i = 0; i < in.source_labels.size(); ++i) out.sources.push_back(static_cast<int>(i));
    for (std::size_t j = 0; j < in.sink_labels.size(); ++j) out.sinks.push_back(static_cast<int>(j));

    auto median_of = [&](const std::vector<int>& ids, const std::vector<std::vector<std::int64_t>>& labels,
                         const std::vector<Rational>& mass, const Rational& lambda, int c) {
        std::vector<Representative> reps;
        for (int id : ids) reps.push_back({id, labels[id], mass[id]});
        reps = sort_representatives(std::move(reps), c);
        try {
            return median_consumption(reps, lambda, c);
        } catch (const MassDeficitError&) {
            out.mass_deficit = true;
            return reps.empty() ? std::numeric_limits<std::int64_t>::min() / 4 : reps.back().label[c];
        }
    };

    for (int c = 0; c <= m; ++c) {
        const Rational lambda = out.gamma / pow2(c + 1);
        const std::int64_t mu_s = median_of(out.sources, in.source_labels, mass_s, lambda, c);
        const std::int64_t mu_t = median_of(out.sinks, in.sink_labels, mass_t, lambda, c);
        const std::int64_t cut = std::min(mu_t, in.caps[c] - mu_s);
        out.mu_source.push_back(mu_s);
        out.mu_sink.push_back(cut);
        std::vector<int> keep_s, keep_t;
        for (int i : out.sources) {
            if (in.source_labels[i][c] <= mu_s) keep_s.push_back(i);
        }
        for (int j : out.sinks) {
            if (in.sink_labels[j][c] <= cut) keep_t.push_back(j);
        }
        out.sources.swap(keep_s);
        out.sinks.swap(keep_t);
    }
    for (int i : out.sources) out.source_z_mass += in.z_source[i];
    for (int j : out.sinks) out.sink_z_mass += in.z_sink[j];
    const Rational bound = out.gamma / pow2(m + 1);
    if (out.source_z_mass < bound || out.sink_z_mass < bound) out.mass_deficit = true;
    return out;
}

std::vector<PrunedDemand> prune_all(const JoinedGraph& jg, const LabelCoverLp& lp, const LpSolution& solution,
                                    const std::vector<std::vector<std::int64_t>>& caps, int m) {
    std::vector<PruneInput> inputs(jg.demands.size());
    for (std::size_t d = 0; d < jg.demands.size(); ++d) {
        const auto& g = jg.demands[d];
        auto& in = inputs[d];
        in.source_labels = g.source_labels;
        in.sink_labels = g.sink_labels;
        in.caps = caps[d];
        for (int v : lp.z_source[d]) in.z_source.push_back(solution.values[v]);
        for (int v : lp.z_sink[d]) in.z_sink.push_back(solution.values[v]);
    }
    for (const auto& pv : lp.y) {
        inputs[pv.demand].relation.emplace_back(pv.source, pv.sink);
        inputs[pv.demand].y.push_back(solution.values[pv.var]);
    }
    std::vector<PrunedDemand> out(jg.demands.size());
    for (std::size_t d = 0; d < inputs.size(); ++d) {
        Rational gamma = 0;
        for (const auto& y : inputs[d].y) gamma += y;
        if (gamma > 0) out[d] = prune(inputs[d], m);
    }
    return out;
}

Bucketing bucket_and_scale(const std::vector<Rational>& gamma, const std::vector<Rational>& x, int m,
                           int total_demands) {
    std::map<int, std::pair<Rational, std::vector<int>>> buckets;
    for (int d = 0; d < static_cast<int>(gamma.size()); ++d) {
        if (gamma[d] <= 0) continue;
        int i = 0;
        while (!(gamma[d] > pow2(-i - 1))) ++i;
        auto& b = buckets[i];
        b.first += gamma[d];
        b.second.push_back(d);
    }
    if (buckets.empty()) throw ContractError("no demand carries LP mass");
    Bucketing out;
    for (const auto& [i, b] : buckets) {
        if (out.i_star < 0 || b.first > out.mass) {
            out.i_star = i;
            out.mass = b.first;
            out.demands = b.second;
        }
    }
    int log_k = 0;
    while ((1 << log_k) < std::max(total_demands, 1)) ++log_k;
    const Rational guarantee = Rational(1) / (2 * (log_k + 1));
    if (to_double(out.mass - guarantee) < -1e-9) {
        throw InvariantViolation("heaviest bucket mass " + to_string(out.mass) + " is below " + to_string(guarantee));
    }
    out.factor = pow2(m + 1) * pow2(out.i_star + 1);
    for (const auto& v : x) out.x_star.push_back(std::min(Rational(1), out.factor * v));
    return out;
}

namespace {

struct WeightedPath {
    std::vector<int> edges;
    double weight = 0;
};

std::vector<WeightedPath> decompose(const JoinedGraph& jg, const LabelCoverLp::FlowSystem& fs,
                                    const std::vector<double>& value) {
    std::map<int, double> residual;
    std::map<int, std::vector<int>> out;
    for (std::size_t k = 0; k < fs.edges.size(); ++k) {
        if (value[fs.vars[k]] > 1e-12) {
            residual[fs.edges[k]] = value[fs.vars[k]];
            out[jg.edges[fs.edges[k]].from].push_back(fs.edges[k]);
        }
    }
    std::vector<WeightedPath> paths;
    for (int guard = 0; guard < 4096; ++guard) {
        WeightedPath p;
        int at = fs.start;
        double bottleneck = std::numeric_limits<double>::infinity();
        std::set<int> visited{at};
        while (at != fs.end) {
            int best = -1;
            for (int e : out[at]) {
                if (residual[e] > 1e-12 && (best < 0 || residual[e] > residual[best])) best = e;
            }
            if (best < 0) break;
            p.edges.push_back(best);
            bottleneck = std::min(bottleneck, residual[best]);
            at = jg.edges[best].to;
            if (!visited.insert(at).second) break;
        }
        if (at != fs.end || p.edges.empty()) break;
        for (int e : p.edges) residual[e] -= bottleneck;
        p.weight = bottleneck;
        paths.push_back(std::move(p));
    }
    return paths;
}

double unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

}  // namespace

RoundingResult gst_round(const JoinedGraph& jg, const LabelCoverLp& lp, const LpSolution& solution,
                         const std::vector<PrunedDemand>& pruned, const Bucketing& bucketing, std::uint64_t seed,
                         int max_runs) {
    std::vector<double> value(solution.values.size());
    for (std::size_t i = 0; i < value.size(); ++i) value[i] = to_double(solution.values[i]);
    const double factor = to_double(bucketing.factor);

    struct Candidates {
        int demand;
        std::vector<WeightedPath> source_paths, sink_paths;
    };
    std::vector<Candidates> cands;
    for (int d : bucketing.demands) {
        Candidates c{d, {}, {}};
        for (int i : pruned[d].sources) {
            for (auto& p : decompose(jg, lp.flows[lp.flow_of_source[d][i]], value)) c.source_paths.push_back(std::move(p));
        }
        for (int j : pruned[d].sinks) {
            for (auto& p : decompose(jg, lp.flows[lp.flow_of_sink[d][j]], value)) c.sink_paths.push_back(std::move(p));
        }
        cands.push_back(std::move(c));
    }

    std::mt19937_64 rng(seed);
    const std::size_t target = (bucketing.demands.size() + 1) / 2;
    RoundingResult best;
    Rational best_cost = -1;
    for (int run = 1; run <= max_runs; ++run) {
        std::set<int> chosen;
        std::vector<int> connected;
        auto pick = [&](const std::vector<WeightedPath>& paths) -> const WeightedPath* {
            const WeightedPath* pick = nullptr;
            Rational pick_cost = 0;
            for (const auto& p : paths) {
                if (unit(rng) >= std::min(1.0, factor * p.weight)) continue;
                Rational extra = 0;
                for (int e : p.edges) {
                    if (!chosen.count(e)) extra += jg.edges[e].cost;
                }
                if (!pick || extra < pick_cost) {
                    pick = &p;
                    pick_cost = extra;
                }
            }
            return pick;
        };
        for (const auto& c : cands) {
            const WeightedPath* s = pick(c.source_paths);
            const WeightedPath* t = pick(c.sink_paths);
            if (!s || !t) continue;
            connected.push_back(c.demand);
            chosen.insert(s->edges.begin(), s->edges.end());
            chosen.insert(t->edges.begin(), t->edges.end());
        }
        if (!connected.empty()) chosen.insert(jg.bridge);
        Rational cost = 0;
        for (int e : chosen) cost += jg.edges[e].cost;
        const bool better = connected.size() > best.connected.size() ||
                            (connected.size() == best.connected.size() && !connected.empty() && cost < best_cost);
        if (better) {
            best.edges.assign(chosen.begin(), chosen.end());
            best.connected = connected;
            best_cost = cost;
        }
        best.runs = run;
        if (connected.size() >= target) {
            best.edges.assign(chosen.begin(), chosen.end());
            best.connected = connected;
            best.partial = false;
            return best;
        }
    }
    if (best.connected.empty()) throw RoundingFailure("no demand connected after " + std::to_string(max_runs) + " runs");
    best.partial = true;
    return best;
}

std::optional<JunctionTree> assemble_from_base_edges(const PcsInstance& instance, int root, std::vector<int> edges,
                                                     const std::vector<int>& claimed, const Rational* theta,
                                                     std::string origin) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    JunctionTree tree;
    tree.root = root;
    tree.origin = std::move(origin);
    const EdgeMask mask = mask_from_edges(instance, edges);
    for (int d = 0; d < static_cast<int>(instance.demands.size()); ++d) {
        auto w = feasible_witness_through(instance, instance.demands[d], root, mask, theta);
        if (w) {
            tree.resolved.push_back(d);
            tree.witnesses.push_back(std::move(*w));
        }
    }
    for (int d : claimed) {
        if (!std::binary_search(tree.resolved.begin(), tree.resolved.end(), d)) {
            throw InvariantViolation("demand " + std::to_string(d) + " claimed by the junction tree at root " +
                                     std::to_string(root) + " does not verify");
        }
    }
    if (tree.resolved.empty()) return std::nullopt;
    tree.cost = 0;
    for (int e : edges) tree.cost += instance.edges[e].cost;
    tree.edges = std::move(edges);
    tree.density = tree.cost / static_cast<int>(tree.resolved.size());
    return tree;
}

std::optional<JunctionTree> assemble_junction_tree(const PcsInstance& instance, const ProductGraph& pg,
                                                   const JoinedGraph& jg, const RoundingResult& rounded,
                                                   const Rational* theta) {
    std::vector<int> base;
    for (int je : rounded.edges) {
        for (int pe : jg.expand(je)) {
            if (pg.edges[pe].base_edge >= 0) base.push_back(pg.edges[pe].base_edge);
        }
    }
    return assemble_from_base_edges(instance, jg.base_root, std::move(base), rounded.connected, theta, "lp-rounding");
}

}  // namespace pcspan
