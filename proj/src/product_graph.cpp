#include "pcspan/product_graph.hpp"

#include "pcspan/errors.hpp"
#include "pcspan/rcsp.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace pcspan {

LayerSpec integer_layers(const PcsInstance& instance) {
    LayerSpec spec;
    spec.lo0 = 0;
    spec.hi0 = 0;
    for (const auto& e : instance.edges) {
        if (denominator(e.r.length) != 1 || e.r.length < 0) {
            throw ParameterError("integer regime needs nonnegative integer lengths");
        }
        spec.edge_units.push_back(floor_to_int(e.r.length));
    }
    for (const auto& d : instance.demands) {
        const std::int64_t cap = floor_to_int(d.budget.length);
        spec.demand_cap0.push_back(cap);
        spec.hi0 = std::max(spec.hi0, cap);
    }
    return spec;
}

LayerSpec scaled_layers(const ScaledInstance& scaled) {
    LayerSpec spec;
    spec.edge_units = scaled.units;
    spec.lo0 = std::min<std::int64_t>(scaled_lower_bound(scaled), 0);
    spec.hi0 = std::max<std::int64_t>(scaled_upper_bound(scaled), 0);
    for (const auto& d : scaled.base.demands) {
        spec.demand_cap0.push_back(floor_to_int(theta_length_bound(d.budget.length, scaled.theta) / scaled.delta));
    }
    return spec;
}

LabelSpace::LabelSpace(const PcsInstance& instance, std::int64_t lo0, std::int64_t hi0) {
    lo_.push_back(lo0);
    hi_.push_back(hi0);
    for (int i = 0; i < instance.m; ++i) {
        if (instance.is_packing(i)) {
            lo_.push_back(0);
            hi_.push_back(instance.tau);
        } else {
            lo_.push_back(-instance.tau);
            hi_.push_back(0);
        }
    }
    size_ = 1;
    for (std::size_t i = 0; i < lo_.size(); ++i) {
        const std::int64_t width = hi_[i] - lo_[i] + 1;
        if (width <= 0) {
            size_ = 0;
            return;
        }
        if (size_ > (std::int64_t(1) << 50) / width) throw ResourceLimitError("label space overflow");
        size_ *= width;
    }
}

bool LabelSpace::valid(const std::vector<std::int64_t>& label) const {
    for (std::size_t i = 0; i < lo_.size(); ++i) {
        if (label[i] < lo_[i] || label[i] > hi_[i]) return false;
    }
    return true;
}

std::int64_t LabelSpace::index(const std::vector<std::int64_t>& label) const {
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < lo_.size(); ++i) idx = idx * (hi_[i] - lo_[i] + 1) + (label[i] - lo_[i]);
    return idx;
}

std::vector<std::int64_t> LabelSpace::decode(std::int64_t index) const {
    std::vector<std::int64_t> label(lo_.size());
    for (int i = static_cast<int>(lo_.size()) - 1; i >= 0; --i) {
        const std::int64_t width = hi_[i] - lo_[i] + 1;
        label[i] = lo_[i] + index % width;
        index /= width;
    }
    return label;
}

std::int64_t LabelSpace::zero_index() const {
    return index(std::vector<std::int64_t>(lo_.size(), 0));
}

int ProductGraph::state(Side side, int u, std::int64_t label) const {
    const std::int64_t L = labels.size();
    return static_cast<int>((side == Side::L ? 0 : 1) * n * L + u * L + label);
}

int ProductGraph::source_terminal(int demand, std::int64_t label) const {
    const std::int64_t L = labels.size();
    return static_cast<int>(2 * n * L + demand * 2 * L + label);
}

int ProductGraph::sink_terminal(int demand, std::int64_t label) const {
    const std::int64_t L = labels.size();
    return static_cast<int>(2 * n * L + demand * 2 * L + L + label);
}

bool ProductGraph::in_relation(int demand, std::int64_t source_label, std::int64_t sink_label) const {
    const auto I = labels.decode(source_label);
    const auto J = labels.decode(sink_label);
    const auto& cap = budget_caps[demand];
    for (std::size_t i = 0; i < I.size(); ++i) {
        if (I[i] + J[i] > cap[i]) return false;
    }
    return true;
}

std::int64_t product_vertex_count(const PcsInstance& instance, const LayerSpec& spec) {
    const LabelSpace labels(instance, std::min<std::int64_t>(spec.lo0, 0), std::max<std::int64_t>(spec.hi0, 0));
    return labels.size() * (2 * static_cast<std::int64_t>(instance.n) + 2 * static_cast<std::int64_t>(instance.demands.size()));
}

ProductGraph build_product_graph(const PcsInstance& instance, const LayerSpec& spec, int root,
                                 const ProductConfig& config) {
    if (root < 0 || root >= instance.n) throw ContractError("root out of range");
    if (spec.edge_units.size() != instance.edges.size() || spec.demand_cap0.size() != instance.demands.size()) {
        throw ContractError("layer spec does not match the instance");
    }
    const std::int64_t total = product_vertex_count(instance, spec);
    if (total > config.max_vertices) {
        throw ResourceLimitError("product graph needs " + std::to_string(total) + " vertices, limit is " +
                                 std::to_string(config.max_vertices));
    }

    ProductGraph pg;
    pg.root = root;
    pg.n = instance.n;
    pg.num_demands = static_cast<int>(instance.demands.size());
    pg.labels = LabelSpace(instance, std::min<std::int64_t>(spec.lo0, 0), std::max<std::int64_t>(spec.hi0, 0));
    const std::int64_t L = pg.labels.size();
    pg.vertices.resize(total);
    for (int side = 0; side < 2; ++side) {
        for (int u = 0; u < instance.n; ++u) {
            for (std::int64_t l = 0; l < L; ++l) {
                auto& v = pg.vertices[pg.state(side == 0 ? Side::L : Side::R, u, l)];
                v.kind = ProductVertex::Kind::State;
                v.vertex = u;
                v.side = side == 0 ? Side::L : Side::R;
                v.label = l;
            }
        }
    }
    for (int d = 0; d < pg.num_demands; ++d) {
        for (std::int64_t l = 0; l < L; ++l) {
            auto& s = pg.vertices[pg.source_terminal(d, l)];
            s.kind = ProductVertex::Kind::SourceTerminal;
            s.vertex = instance.demands[d].s;
            s.side = Side::L;
            s.label = l;
            s.demand = d;
            auto& t = pg.vertices[pg.sink_terminal(d, l)];
            t.kind = ProductVertex::Kind::SinkTerminal;
            t.vertex = instance.demands[d].t;
            t.side = Side::R;
            t.label = l;
            t.demand = d;
        }
        std::vector<std::int64_t> cap{spec.demand_cap0[d]};
        for (auto b : instance.demands[d].budget.res) cap.push_back(b);
        pg.budget_caps.push_back(std::move(cap));
    }

    std::unordered_map<std::uint64_t, int> seen;
    auto add_edge = [&](int from, int to, const Rational& cost, int base) {
        const std::uint64_t key = static_cast<std::uint64_t>(from) * static_cast<std::uint64_t>(total) +
                                  static_cast<std::uint64_t>(to);
        auto it = seen.find(key);
        if (it != seen.end()) {
            if (cost < pg.edges[it->second].cost) {
                pg.edges[it->second].cost = cost;
                pg.edges[it->second].base_edge = base;
            }
            return;
        }
        seen.emplace(key, static_cast<int>(pg.edges.size()));
        pg.edges.push_back({from, to, cost, base});
    };

    const int dims = pg.labels.dims();
    std::vector<std::int64_t> next(dims);
    for (std::int64_t l = 0; l < L; ++l) {
        const auto label = pg.labels.decode(l);
        for (int e = 0; e < static_cast<int>(instance.edges.size()); ++e) {
            const auto& edge = instance.edges[e];
            next[0] = label[0] + spec.edge_units[e];
            for (int i = 0; i < instance.m; ++i) {
                const std::int64_t v = label[i + 1] + edge.r.res[i];
                next[i + 1] = instance.is_packing(i) ? v : std::max<std::int64_t>(v, -instance.tau);
            }
            if (!pg.labels.valid(next)) continue;
            const std::int64_t nl = pg.labels.index(next);
            // R side: (u, I) -> (v, I + r_e).  L side: (u, r_e + J) -> (v, J) with J = label.
            add_edge(pg.state(Side::R, edge.u, l), pg.state(Side::R, edge.v, nl), edge.cost, e);
            add_edge(pg.state(Side::L, edge.u, nl), pg.state(Side::L, edge.v, l), edge.cost, e);
        }
    }
    const std::int64_t zero = pg.labels.zero_index();
    pg.root_left = pg.state(Side::L, root, zero);
    pg.root_right = pg.state(Side::R, root, zero);
    pg.dummy_edge = static_cast<int>(pg.edges.size());
    pg.edges.push_back({pg.root_left, pg.root_right, Rational(0), -1});
    for (int d = 0; d < pg.num_demands; ++d) {
        for (std::int64_t l = 0; l < L; ++l) {
            pg.edges.push_back({pg.source_terminal(d, l), pg.state(Side::L, instance.demands[d].s, l), Rational(0), -1});
            pg.edges.push_back({pg.state(Side::R, instance.demands[d].t, l), pg.sink_terminal(d, l), Rational(0), -1});
        }
    }
    pg.out.assign(total, {});
    pg.in.assign(total, {});
    for (int e = 0; e < static_cast<int>(pg.edges.size()); ++e) {
        pg.out[pg.edges[e].from].push_back(e);
        pg.in[pg.edges[e].to].push_back(e);
    }
    return pg;
}

namespace {

std::vector<char> reach(const ProductGraph& pg, int start, bool forward) {
    std::vector<char> seen(pg.vertices.size(), 0);
    std::deque<int> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int e : forward ? pg.out[v] : pg.in[v]) {
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

std::vector<char> forward_reach(const ProductGraph& pg, int from) { return reach(pg, from, true); }
std::vector<char> backward_reach(const ProductGraph& pg, int to) { return reach(pg, to, false); }

Walk project_to_base(const ProductGraph& pg, const std::vector<int>& product_edges, int start_vertex) {
    Walk walk;
    walk.start = start_vertex;
    int at = start_vertex;
    for (int pe : product_edges) {
        const auto& edge = pg.edges[pe];
        if (edge.base_edge < 0) continue;
        const auto& from = pg.vertices[edge.from];
        if (from.vertex != at) throw InvariantViolation("projected walk is disconnected");
        walk.edges.push_back(edge.base_edge);
        at = pg.vertices[edge.to].vertex;
    }
    return walk;
}

std::vector<bool> product_connectivity(const ProductGraph& pg) {
    const auto to_root = backward_reach(pg, pg.root_left);
    const auto from_root = forward_reach(pg, pg.root_right);
    const std::int64_t L = pg.labels.size();
    std::vector<bool> out(pg.num_demands, false);
    for (int d = 0; d < pg.num_demands; ++d) {
        std::vector<std::int64_t> sources, sinks;
        for (std::int64_t l = 0; l < L; ++l) {
            if (to_root[pg.source_terminal(d, l)]) sources.push_back(l);
            if (from_root[pg.sink_terminal(d, l)]) sinks.push_back(l);
        }
        for (auto a : sources) {
            for (auto b : sinks) {
                if (pg.in_relation(d, a, b)) {
                    out[d] = true;
                    break;
                }
            }
            if (out[d]) break;
        }
    }
    return out;
}

EquivalenceReport equivalence_check(const PcsInstance& instance, int root, const ProductConfig& config) {
    const auto pg = build_product_graph(instance, integer_layers(instance), root, config);
    EquivalenceReport report;
    report.product_side = product_connectivity(pg);
    for (std::size_t d = 0; d < instance.demands.size(); ++d) {
        const bool oracle = feasible_witness_through(instance, instance.demands[d], root).has_value();
        report.oracle_side.push_back(oracle);
        if (oracle != report.product_side[d]) ++report.mismatches;
    }
    return report;
}

std::string dump_product_graph(const ProductGraph& pg) {
    auto label_text = [&](std::int64_t l) {
        std::ostringstream os;
        const auto v = pg.labels.decode(l);
        os << "(";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        os << ")";
        return os.str();
    };
    auto vertex_text = [&](int id) {
        const auto& v = pg.vertices[id];
        std::ostringstream os;
        switch (v.kind) {
            case ProductVertex::Kind::State: os << v.vertex; break;
            case ProductVertex::Kind::SourceTerminal: os << "s" << v.vertex << "^" << v.demand; break;
            case ProductVertex::Kind::SinkTerminal: os << "t" << v.vertex << "^" << v.demand; break;
        }
        os << " " << label_text(v.label);
        return os.str();
    };
    std::ostringstream os;
    for (const auto& e : pg.edges) {
        const auto& from = pg.vertices[e.from];
        const char* side = from.side == Side::L ? "L" : "R";
        if (&e == &pg.edges[pg.dummy_edge]) side = "D";
        os << side << " " << vertex_text(e.from) << " " << vertex_text(e.to) << " " << to_string(e.cost) << "\n";
    }
    return os.str();
}

}  // namespace pcspan
