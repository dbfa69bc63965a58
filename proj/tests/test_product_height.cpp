#include "fixtures.hpp"

#include "pcspan/errors.hpp"
#include "pcspan/generator.hpp"
#include "pcspan/height_reduction.hpp"
#include "pcspan/product_graph.hpp"

#include <doctest.h>

#include <optional>
#include <random>

using namespace pcspan;

namespace {

using Matrix = std::vector<std::vector<std::optional<Rational>>>;

Matrix floyd_warshall(int n, const std::vector<Arc>& arcs) {
    Matrix d(n, std::vector<std::optional<Rational>>(n));
    for (int v = 0; v < n; ++v) d[v][v] = Rational(0);
    for (const auto& a : arcs) {
        if (!d[a.from][a.to] || a.cost < *d[a.from][a.to]) d[a.from][a.to] = a.cost;
    }
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            if (!d[i][k]) continue;
            for (int j = 0; j < n; ++j) {
                if (!d[k][j]) continue;
                const Rational via = *d[i][k] + *d[k][j];
                if (!d[i][j] || via < *d[i][j]) d[i][j] = via;
            }
        }
    }
    return d;
}

std::vector<Arc> random_arcs(std::mt19937_64& rng, int n, int m) {
    std::vector<Arc> arcs;
    for (int i = 0; i < m; ++i) {
        arcs.push_back({static_cast<int>(uniform_int(rng, 0, n - 1)), static_cast<int>(uniform_int(rng, 0, n - 1)),
                        Rational(uniform_int(rng, 0, 9), uniform_int(rng, 1, 3)), i});
    }
    return arcs;
}

Digraph product_digraph(const ProductGraph& pg) {
    std::vector<Arc> arcs;
    for (int e = 0; e < static_cast<int>(pg.edges.size()); ++e) {
        if (e != pg.dummy_edge) arcs.push_back({pg.edges[e].from, pg.edges[e].to, pg.edges[e].cost, e});
    }
    return Digraph(static_cast<int>(pg.vertices.size()), std::move(arcs));
}

}  // namespace

TEST_CASE("dijkstra and the metric closure match Floyd-Warshall") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 7;
        const auto arcs = random_arcs(rng, n, 16);
        const Digraph g(n, arcs);
        const auto ref = floyd_warshall(n, arcs);
        const auto closure = cost_metric_closure(g);
        for (int u = 0; u < n; ++u) {
            const auto fwd = dijkstra(g, u, true);
            const auto bwd = dijkstra(g, u, false);
            for (int v = 0; v < n; ++v) {
                CHECK(static_cast<bool>(fwd.reached[v]) == ref[u][v].has_value());
                CHECK(static_cast<bool>(bwd.reached[v]) == ref[v][u].has_value());
                CHECK(closure.cost(u, v) == ref[u][v]);
                if (!ref[u][v]) continue;
                CHECK(fwd.dist[v] == *ref[u][v]);
                Rational sum = 0;
                int at = u;
                for (int a : closure.path(g, u, v)) {
                    CHECK(g.arcs[a].from == at);
                    at = g.arcs[a].to;
                    sum += g.arcs[a].cost;
                }
                CHECK(at == v);
                CHECK(sum == *ref[u][v]);
            }
        }
    }
}

TEST_CASE("product graph size and edge labels") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        GeneratorParams p;
        p.n = 4;
        p.k = 2;
        p.m = 2;
        p.packing = 1;
        p.tau = 2;
        p.max_length = 2;
        p.seed = seed;
        const auto inst = generate_instance(p);
        const auto spec = integer_layers(inst);
        const auto pg = build_product_graph(inst, spec, 0);
        CHECK(product_vertex_count(inst, spec) == static_cast<std::int64_t>(pg.vertices.size()));
        for (int e = 0; e < static_cast<int>(pg.edges.size()); ++e) {
            const auto& pe = pg.edges[e];
            if (pe.base_edge < 0) {
                CHECK(pe.cost == 0);
                continue;
            }
            const auto& base = inst.edges[pe.base_edge];
            const auto& from = pg.vertices[pe.from];
            const auto& to = pg.vertices[pe.to];
            REQUIRE(from.side == to.side);
            CHECK(from.vertex == base.u);
            CHECK(to.vertex == base.v);
            CHECK(pe.cost == base.cost);
            // R side adds the consumption to the label; L side removes it.
            const auto before = from.side == Side::R ? pg.label_of(pe.from) : pg.label_of(pe.to);
            const auto after = from.side == Side::R ? pg.label_of(pe.to) : pg.label_of(pe.from);
            CHECK(after[0] == before[0] + spec.edge_units[pe.base_edge]);
            for (int i = 0; i < inst.m; ++i) {
                const auto raw = before[i + 1] + base.r.res[i];
                CHECK(after[i + 1] == (inst.is_packing(i) ? raw : std::max<std::int64_t>(raw, -inst.tau)));
            }
        }
    }
}

TEST_CASE("relation follows the budget") {
    const auto inst = fixtures::three_vertex();
    const auto pg = build_product_graph(inst, integer_layers(inst), 1);
    for (std::int64_t a = 0; a < pg.labels.size(); ++a) {
        for (std::int64_t b = 0; b < pg.labels.size(); ++b) {
            const auto I = pg.labels.decode(a);
            const auto J = pg.labels.decode(b);
            const bool expected = I[0] + J[0] <= 2 && I[1] + J[1] <= 1;
            CHECK(pg.in_relation(0, a, b) == expected);
        }
    }
}

TEST_CASE("product graph respects the vertex cap") {
    const auto inst = fixtures::three_vertex();
    ProductConfig cfg;
    cfg.max_vertices = 5;
    CHECK_THROWS_AS(build_product_graph(inst, integer_layers(inst), 0, cfg), ResourceLimitError);
}

TEST_CASE("product connectivity matches the through-root oracle") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        GeneratorParams p;
        p.n = 5;
        p.k = 2;
        p.m = 1 + static_cast<int>(seed % 2);
        p.tau = 2;
        p.max_length = 2;
        p.seed = seed;
        const auto inst = generate_instance(p);
        for (int r = 0; r < inst.n; ++r) CHECK(equivalence_check(inst, r).mismatches == 0);
    }
}

TEST_CASE("height reduction preserves single-demand path costs and expands to product paths") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        GeneratorParams p;
        p.n = 4;
        p.k = 2;
        p.m = 1;
        p.tau = 1;
        p.max_length = 2;
        p.seed = seed;
        const auto inst = generate_instance(p);
        for (int r = 0; r < inst.n; ++r) {
            const auto pg = build_product_graph(inst, integer_layers(inst), r);
            for (int h : {1, 2, 3}) {
                const auto jg = build_joined(pg, h);
                if (!jg) continue;
                for (int e = 0; e < static_cast<int>(jg->edges.size()); ++e) {
                    if (e == jg->bridge) continue;
                    Rational sum = 0;
                    int at = jg->vertices[jg->edges[e].from].product;
                    for (int pe : jg->expand(e)) {
                        CHECK(pg.edges[pe].from == at);
                        at = pg.edges[pe].to;
                        sum += pg.edges[pe].cost;
                    }
                    CHECK(at == jg->vertices[jg->edges[e].to].product);
                    CHECK(sum == jg->edges[e].cost);
                }
                std::vector<Arc> arcs;
                for (int e = 0; e < static_cast<int>(jg->edges.size()); ++e) {
                    arcs.push_back({jg->edges[e].from, jg->edges[e].to, jg->edges[e].cost, e});
                }
                const Digraph jd(static_cast<int>(jg->vertices.size()), std::move(arcs));
                const auto j_up = dijkstra(jd, jg->root_up, false);
                const auto j_down = dijkstra(jd, jg->root_down, true);
                const Digraph pd = product_digraph(pg);
                const auto p_up = dijkstra(pd, pg.root_left, false);
                const auto p_down = dijkstra(pd, pg.root_right, true);
                for (const auto& groups : jg->demands) {
                    for (auto [a, b] : groups.relation) {
                        const int js = groups.sources[a];
                        const int jt = groups.sinks[b];
                        const int ps = jg->vertices[js].product;
                        const int pt = jg->vertices[jt].product;
                        REQUIRE(p_up.reached[ps]);
                        REQUIRE(p_down.reached[pt]);
                        REQUIRE(j_up.reached[js]);
                        REQUIRE(j_down.reached[jt]);
                        CHECK(j_up.dist[js] == p_up.dist[ps]);
                        CHECK(j_down.dist[jt] == p_down.dist[pt]);
                    }
                }
            }
        }
    }
}

TEST_CASE("height from epsilon") {
    CHECK(height_from_epsilon(Rational(1, 2)) == 2);
    CHECK(height_from_epsilon(Rational(1, 3)) == 3);
    CHECK(height_from_epsilon(Rational(2, 5)) == 3);
    CHECK_THROWS_AS(height_from_epsilon(Rational(0)), ParameterError);
}
