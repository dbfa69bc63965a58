#include "pcspan/height_reduction.hpp"

#include "pcspan/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>

namespace pcspan {

Digraph::Digraph(int vertices, std::vector<Arc> arc_list) : n(vertices), arcs(std::move(arc_list)), out(vertices), in(vertices) {
    for (int a = 0; a < static_cast<int>(arcs.size()); ++a) {
        out[arcs[a].from].push_back(a);
        in[arcs[a].to].push_back(a);
    }
}

std::vector<int> ShortestPathTree::path(const Digraph& g, int v) const {
    std::vector<int> arcs;
    if (!reached[v]) return arcs;
    int at = v;
    while (at != root) {
        const int a = link[at];
        arcs.push_back(a);
        at = forward ? g.arcs[a].from : g.arcs[a].to;
    }
    if (forward) std::reverse(arcs.begin(), arcs.end());
    return arcs;
}

ShortestPathTree dijkstra(const Digraph& g, int root, bool forward) {
    ShortestPathTree tree;
    tree.root = root;
    tree.forward = forward;
    tree.reached.assign(g.n, 0);
    tree.dist.assign(g.n, Rational(0));
    tree.link.assign(g.n, -1);
    std::vector<char> done(g.n, 0);
    using Item = std::pair<Rational, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
    tree.reached[root] = 1;
    queue.emplace(Rational(0), root);
    while (!queue.empty()) {
        auto [d, v] = queue.top();
        queue.pop();
        if (done[v]) continue;
        done[v] = 1;
        for (int a : forward ? g.out[v] : g.in[v]) {
            const auto& arc = g.arcs[a];
            if (arc.cost < 0) throw ContractError("negative arc cost in closure");
            const int w = forward ? arc.to : arc.from;
            if (done[w]) continue;
            Rational cand = d + arc.cost;
            if (!tree.reached[w] || cand < tree.dist[w]) {
                tree.reached[w] = 1;
                tree.dist[w] = cand;
                tree.link[w] = a;
                queue.emplace(std::move(cand), w);
            }
        }
    }
    return tree;
}

std::optional<Rational> MetricClosure::cost(int u, int v) const {
    if (!from[u].reached[v]) return std::nullopt;
    return from[u].dist[v];
}

std::vector<int> MetricClosure::path(const Digraph& g, int u, int v) const {
    std::vector<int> ids;
    for (int a : from[u].path(g, v)) ids.push_back(g.arcs[a].id);
    return ids;
}

MetricClosure cost_metric_closure(const Digraph& g) {
    MetricClosure closure;
    closure.n = g.n;
    for (int u = 0; u < g.n; ++u) closure.from.push_back(dijkstra(g, u, true));
    return closure;
}

namespace {

std::vector<char> half_reach(const ProductGraph& pg, const std::vector<int>& starts, bool forward) {
    std::vector<char> seen(pg.vertices.size(), 0);
    std::deque<int> queue;
    for (int s : starts) {
        if (!seen[s]) {
            seen[s] = 1;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int e : forward ? pg.out[v] : pg.in[v]) {
            if (e == pg.dummy_edge) continue;
            const int w = forward ? pg.edges[e].to : pg.edges[e].from;
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
        }
    }
    return seen;
}

}  // namespace

HalfGraph extract_half(const ProductGraph& pg, Side side, const std::vector<int>& terminals) {
    HalfGraph half;
    half.side = side;
    const int root = side == Side::L ? pg.root_left : pg.root_right;
    std::vector<char> a, b;
    if (side == Side::L) {
        a = half_reach(pg, terminals, true);
        b = half_reach(pg, {root}, false);
    } else {
        a = half_reach(pg, {root}, true);
        b = half_reach(pg, terminals, false);
    }
    half.local_of.assign(pg.vertices.size(), -1);
    for (int v = 0; v < static_cast<int>(pg.vertices.size()); ++v) {
        if (a[v] && b[v]) {
            half.local_of[v] = static_cast<int>(half.product_of.size());
            half.product_of.push_back(v);
        }
    }
    if (half.local_of[root] < 0) throw ContractError("root is not connected to any terminal");
    half.root = half.local_of[root];
    std::vector<Arc> arcs;
    for (int v : half.product_of) {
        for (int e : pg.out[v]) {
            if (e == pg.dummy_edge) continue;
            const int w = pg.edges[e].to;
            if (half.local_of[w] < 0) continue;
            arcs.push_back({half.local_of[v], half.local_of[w], pg.edges[e].cost, e});
        }
    }
    half.graph = Digraph(static_cast<int>(half.product_of.size()), std::move(arcs));
    for (int t : terminals) {
        if (half.local_of[t] < 0) throw ContractError("terminal is not connected to the root");
        half.terminals.push_back(half.local_of[t]);
    }
    return half;
}

LayeredGraph build_layered(const HalfGraph& half, int h) {
    if (h < 1) throw ParameterError("height must be at least 1");
    LayeredGraph lg;
    lg.h = h;
    lg.up = half.side == Side::L;
    std::vector<char> is_terminal(half.graph.n, 0);
    for (int t : half.terminals) is_terminal[t] = 1;
    std::vector<int> middle;
    for (int v = 0; v < half.graph.n; ++v) {
        if (!is_terminal[v]) middle.push_back(v);
    }
    std::vector<int> terms = half.terminals;
    std::sort(terms.begin(), terms.end());
    lg.levels.assign(h + 1, middle);
    if (lg.up) {
        lg.levels[0] = terms;
        lg.levels[h] = {half.root};
    } else {
        lg.levels[0] = {half.root};
        lg.levels[h] = terms;
    }

    std::map<std::pair<int, bool>, int> cache;
    auto tree_of = [&](int v, bool forward) {
        auto it = cache.find({v, forward});
        if (it != cache.end()) return it->second;
        lg.trees.push_back(dijkstra(half.graph, v, forward));
        const int id = static_cast<int>(lg.trees.size()) - 1;
        cache.emplace(std::make_pair(v, forward), id);
        return id;
    };

    for (int i = 0; i < h; ++i) {
        const auto& from_level = lg.levels[i];
        const auto& to_level = lg.levels[i + 1];
        const bool last = i == h - 1;
        if (lg.up && last) {
            const int t = tree_of(half.root, false);
            for (int u : from_level) {
                if (lg.trees[t].reached[u]) lg.edges.push_back({i, u, half.root, lg.trees[t].dist[u], t});
            }
        } else if (!lg.up && last) {
            for (int u : from_level) {
                for (int v : to_level) {
                    const int t = tree_of(v, false);
                    if (lg.trees[t].reached[u]) lg.edges.push_back({i, u, v, lg.trees[t].dist[u], t});
                }
            }
        } else {
            for (int u : from_level) {
                const int t = tree_of(u, true);
                for (int v : to_level) {
                    if (lg.trees[t].reached[v]) lg.edges.push_back({i, u, v, lg.trees[t].dist[v], t});
                }
            }
        }
    }
    return lg;
}

std::vector<int> expand_layered_edge(const HalfGraph& half, const LayeredGraph& lg, int edge) {
    const auto& le = lg.edges[edge];
    const auto& tree = lg.trees[le.tree];
    const auto arcs = tree.path(half.graph, tree.forward ? le.to : le.from);
    std::vector<int> ids;
    ids.reserve(arcs.size());
    for (int a : arcs) ids.push_back(half.graph.arcs[a].id);
    return ids;
}

std::vector<int> JoinedGraph::expand(int joined_edge) const {
    const auto& e = edges[joined_edge];
    if (e.half < 0) return {};
    return e.half == 0 ? expand_layered_edge(up_half, up, e.layered) : expand_layered_edge(down_half, down, e.layered);
}

int JoinedGraph::relation_size() const {
    int total = 0;
    for (const auto& d : demands) total += static_cast<int>(d.relation.size());
    return total;
}

namespace {

void join_halves(JoinedGraph& jg) {
    std::vector<std::vector<int>> up_ids(jg.up.h + 1), down_ids(jg.down.h + 1);
    auto add_levels = [&](const LayeredGraph& lg, bool is_up, std::vector<std::vector<int>>& ids) {
        for (int i = 0; i <= lg.h; ++i) {
            ids[i].assign(is_up ? jg.up_half.graph.n : jg.down_half.graph.n, -1);
            for (int local : lg.levels[i]) {
                ids[i][local] = static_cast<int>(jg.vertices.size());
                const int product = is_up ? jg.up_half.product_of[local] : jg.down_half.product_of[local];
                jg.vertices.push_back({is_up, i, local, product});
            }
        }
    };
    add_levels(jg.up, true, up_ids);
    add_levels(jg.down, false, down_ids);
    jg.root_up = up_ids[jg.up.h][jg.up_half.root];
    jg.root_down = down_ids[0][jg.down_half.root];
    for (int e = 0; e < static_cast<int>(jg.up.edges.size()); ++e) {
        const auto& le = jg.up.edges[e];
        jg.edges.push_back({up_ids[le.level][le.from], up_ids[le.level + 1][le.to], le.cost, 0, e});
    }
    for (int e = 0; e < static_cast<int>(jg.down.edges.size()); ++e) {
        const auto& le = jg.down.edges[e];
        jg.edges.push_back({down_ids[le.level][le.from], down_ids[le.level + 1][le.to], le.cost, 1, e});
    }
    jg.bridge = static_cast<int>(jg.edges.size());
    jg.edges.push_back({jg.root_up, jg.root_down, Rational(0), -1, -1});
    jg.out.assign(jg.vertices.size(), {});
    jg.in.assign(jg.vertices.size(), {});
    for (int e = 0; e < static_cast<int>(jg.edges.size()); ++e) {
        jg.out[jg.edges[e].from].push_back(e);
        jg.in[jg.edges[e].to].push_back(e);
    }
}

}  // namespace

std::optional<JoinedGraph> build_joined(const ProductGraph& pg, int h) {
    const auto to_root = backward_reach(pg, pg.root_left);
    const auto from_root = forward_reach(pg, pg.root_right);
    const std::int64_t L = pg.labels.size();

    struct Pending {
        std::vector<std::int64_t> sources, sinks;
        std::vector<std::pair<int, int>> relation;
    };
    std::vector<Pending> pending(pg.num_demands);
    std::vector<int> source_terms, sink_terms;
    for (int d = 0; d < pg.num_demands; ++d) {
        std::vector<std::int64_t> s_all, t_all;
        for (std::int64_t l = 0; l < L; ++l) {
            if (to_root[pg.source_terminal(d, l)]) s_all.push_back(l);
            if (from_root[pg.sink_terminal(d, l)]) t_all.push_back(l);
        }
        std::vector<char> s_used(s_all.size(), 0), t_used(t_all.size(), 0);
        std::vector<std::pair<int, int>> pairs;
        for (std::size_t a = 0; a < s_all.size(); ++a) {
            for (std::size_t b = 0; b < t_all.size(); ++b) {
                if (pg.in_relation(d, s_all[a], t_all[b])) {
                    pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
                    s_used[a] = t_used[b] = 1;
                }
            }
        }
        std::vector<int> s_new(s_all.size(), -1), t_new(t_all.size(), -1);
        auto& p = pending[d];
        for (std::size_t a = 0; a < s_all.size(); ++a) {
            if (s_used[a]) {
                s_new[a] = static_cast<int>(p.sources.size());
                p.sources.push_back(s_all[a]);
                source_terms.push_back(pg.source_terminal(d, s_all[a]));
            }
        }
        for (std::size_t b = 0; b < t_all.size(); ++b) {
            if (t_used[b]) {
                t_new[b] = static_cast<int>(p.sinks.size());
                p.sinks.push_back(t_all[b]);
                sink_terms.push_back(pg.sink_terminal(d, t_all[b]));
            }
        }
        for (auto [a, b] : pairs) p.relation.emplace_back(s_new[a], t_new[b]);
    }
    if (source_terms.empty()) return std::nullopt;

    JoinedGraph jg;
    jg.base_root = pg.root;
    jg.up_half = extract_half(pg, Side::L, source_terms);
    jg.down_half = extract_half(pg, Side::R, sink_terms);
    jg.up = build_layered(jg.up_half, h);
    jg.down = build_layered(jg.down_half, h);
    join_halves(jg);

    std::vector<int> joined_of_product(pg.vertices.size(), -1);
    for (int v = 0; v < static_cast<int>(jg.vertices.size()); ++v) {
        const auto& jv = jg.vertices[v];
        if ((jv.is_up && jv.level == 0) || (!jv.is_up && jv.level == jg.down.h)) joined_of_product[jv.product] = v;
    }
    for (int d = 0; d < pg.num_demands; ++d) {
        JoinedGraph::DemandGroups groups;
        for (auto l : pending[d].sources) {
            groups.sources.push_back(joined_of_product[pg.source_terminal(d, l)]);
            groups.source_labels.push_back(pg.labels.decode(l));
        }
        for (auto l : pending[d].sinks) {
            groups.sinks.push_back(joined_of_product[pg.sink_terminal(d, l)]);
            groups.sink_labels.push_back(pg.labels.decode(l));
        }
        groups.relation = std::move(pending[d].relation);
        jg.demands.push_back(std::move(groups));
    }
    return jg;
}

int height_from_epsilon(const Rational& epsilon) {
    if (epsilon <= 0) throw ParameterError("epsilon must be positive");
    return static_cast<int>(ceil_to_int(Rational(1) / epsilon));
}

}  // namespace pcspan
