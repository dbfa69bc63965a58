#include "pcspan/instance_io.hpp"

#include "pcspan/errors.hpp"
#include "pcspan/rcsp.hpp"

#include <json.hpp>

#include <fstream>
#include <limits>
#include <sstream>

namespace pcspan {

namespace {

using json = nlohmann::ordered_json;

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": malformed JSON");
    }
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw ParseError(path + ": expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(path + "/" + key + ": missing field");
    return *it;
}

std::int64_t as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ParseError(path + ": expected an integer");
    return v.get<std::int64_t>();
}

int as_index(const json& v, const std::string& path, int n) {
    const auto x = as_int(v, path);
    if (x < 0 || x >= n) throw ParseError(path + ": vertex " + std::to_string(x) + " out of range");
    return static_cast<int>(x);
}

Rational as_rational(const json& v, const std::string& path) {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (!v.is_string()) throw ParseError(path + ": expected a \"num/den\" string or an integer");
    try {
        return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

const json& as_array(const json& v, const std::string& path) {
    if (!v.is_array()) throw ParseError(path + ": expected an array");
    return v;
}

json rational_json(const Rational& r) { return to_string(r); }

ResourceVector parse_vector(const json& v, const std::string& path, int m) {
    as_array(v, path);
    if (static_cast<int>(v.size()) != m + 1) {
        throw ParseError(path + ": expected " + std::to_string(m + 1) + " entries, found " + std::to_string(v.size()));
    }
    ResourceVector r = ResourceVector::zero(m);
    r.length = as_rational(v[0], path + "/0");
    for (int i = 1; i <= m; ++i) r.res[i - 1] = as_int(v[i], path + "/" + std::to_string(i));
    return r;
}

json vector_json(const ResourceVector& r) {
    json out = json::array();
    out.push_back(rational_json(r.length));
    for (auto x : r.res) out.push_back(x);
    return out;
}

json pcs_json(const PcsInstance& inst) {
    json out;
    out["n"] = inst.n;
    out["m"] = inst.m;
    out["tau"] = inst.tau;
    out["packing"] = inst.packing;
    out["covering"] = inst.covering;
    json edges = json::array();
    for (const auto& e : inst.edges) {
        json je;
        je["u"] = e.u;
        je["v"] = e.v;
        je["cost"] = rational_json(e.cost);
        je["res"] = vector_json(e.r);
        edges.push_back(std::move(je));
    }
    out["edges"] = std::move(edges);
    json demands = json::array();
    for (const auto& d : inst.demands) {
        json jd;
        jd["s"] = d.s;
        jd["t"] = d.t;
        jd["budget"] = vector_json(d.budget);
        demands.push_back(std::move(jd));
    }
    out["demands"] = std::move(demands);
    return out;
}

int as_count(const json& v, const std::string& path) {
    const auto x = as_int(v, path);
    if (x < 0 || x > std::numeric_limits<int>::max()) throw ParseError(path + ": expected a nonnegative count");
    return static_cast<int>(x);
}

}  // namespace

PcsInstance parse_pcs(std::string_view text) {
    const json doc = parse_json(text);
    PcsInstance inst;
    inst.n = as_count(field(doc, "n", ""), "/n");
    inst.m = as_count(field(doc, "m", ""), "/m");
    inst.tau = as_int(field(doc, "tau", ""), "/tau");
    inst.packing = as_count(field(doc, "packing", ""), "/packing");
    inst.covering = as_count(field(doc, "covering", ""), "/covering");
    if (inst.tau < 0) throw ParseError("/tau: must be nonnegative");
    if (inst.packing + inst.covering != inst.m) throw ParseError("/covering: packing + covering must equal m");
    const auto& edges = as_array(field(doc, "edges", ""), "/edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string path = "/edges/" + std::to_string(i);
        Edge e;
        e.u = as_index(field(edges[i], "u", path), path + "/u", inst.n);
        e.v = as_index(field(edges[i], "v", path), path + "/v", inst.n);
        e.cost = as_rational(field(edges[i], "cost", path), path + "/cost");
        e.r = parse_vector(field(edges[i], "res", path), path + "/res", inst.m);
        inst.edges.push_back(std::move(e));
    }
    const auto& demands = as_array(field(doc, "demands", ""), "/demands");
    for (std::size_t i = 0; i < demands.size(); ++i) {
        const std::string path = "/demands/" + std::to_string(i);
        Demand d;
        d.s = as_index(field(demands[i], "s", path), path + "/s", inst.n);
        d.t = as_index(field(demands[i], "t", path), path + "/t", inst.n);
        d.budget = parse_vector(field(demands[i], "budget", path), path + "/budget", inst.m);
        inst.demands.push_back(std::move(d));
    }
    return inst;
}

RcsInstance parse_rcs(std::string_view text) {
    const json doc = parse_json(text);
    RcsInstance rcs;
    rcs.n = as_count(field(doc, "n", ""), "/n");
    rcs.visit_groups = as_count(field(doc, "visit_groups", ""), "/visit_groups");
    const auto& groups = as_array(field(doc, "groups", ""), "/groups");
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const std::string path = "/groups/" + std::to_string(g);
        std::vector<int> members;
        for (std::size_t j = 0; j < as_array(groups[g], path).size(); ++j) {
            members.push_back(as_index(groups[g][j], path + "/" + std::to_string(j), rcs.n));
        }
        rcs.groups.push_back(std::move(members));
    }
    if (rcs.visit_groups > rcs.m()) throw ParseError("/visit_groups: exceeds the number of groups");
    const auto& edges = as_array(field(doc, "edges", ""), "/edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string path = "/edges/" + std::to_string(i);
        RcsEdge e;
        e.u = as_index(field(edges[i], "u", path), path + "/u", rcs.n);
        e.v = as_index(field(edges[i], "v", path), path + "/v", rcs.n);
        e.cost = as_rational(field(edges[i], "cost", path), path + "/cost");
        e.length = as_int(field(edges[i], "length", path), path + "/length");
        rcs.edges.push_back(std::move(e));
    }
    const auto& demands = as_array(field(doc, "demands", ""), "/demands");
    for (std::size_t i = 0; i < demands.size(); ++i) {
        const std::string path = "/demands/" + std::to_string(i);
        RcsDemand d;
        d.s = as_index(field(demands[i], "s", path), path + "/s", rcs.n);
        d.t = as_index(field(demands[i], "t", path), path + "/t", rcs.n);
        const auto& ctrl = as_array(field(demands[i], "ctrl", path), path + "/ctrl");
        if (static_cast<int>(ctrl.size()) != rcs.m() + 1) throw ParseError(path + "/ctrl: expected m+1 entries");
        for (std::size_t j = 0; j < ctrl.size(); ++j) d.ctrl.push_back(as_int(ctrl[j], path + "/ctrl/" + std::to_string(j)));
        rcs.demands.push_back(std::move(d));
    }
    return rcs;
}

HopsetInstance parse_hopset(std::string_view text) {
    const json doc = parse_json(text);
    HopsetInstance hs;
    hs.n = as_count(field(doc, "n", ""), "/n");
    std::int64_t beta = 0;
    if (doc.contains("beta")) beta = as_int(doc["beta"], "/beta");
    const auto& edges = as_array(field(doc, "edges", ""), "/edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string path = "/edges/" + std::to_string(i);
        HopsetEdge e;
        e.u = as_index(field(edges[i], "u", path), path + "/u", hs.n);
        e.v = as_index(field(edges[i], "v", path), path + "/v", hs.n);
        e.length = as_int(field(edges[i], "length", path), path + "/length");
        hs.edges.push_back(e);
    }
    const auto& demands = as_array(field(doc, "demands", ""), "/demands");
    for (std::size_t i = 0; i < demands.size(); ++i) {
        const std::string path = "/demands/" + std::to_string(i);
        HopsetDemand d;
        d.s = as_index(field(demands[i], "s", path), path + "/s", hs.n);
        d.t = as_index(field(demands[i], "t", path), path + "/t", hs.n);
        d.dist = as_int(field(demands[i], "dist", path), path + "/dist");
        d.beta = demands[i].contains("beta") ? as_int(demands[i]["beta"], path + "/beta") : beta;
        if (d.beta <= 0) throw ParseError(path + "/beta: missing or nonpositive hop bound");
        hs.demands.push_back(d);
    }
    return hs;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(path + ": cannot write file");
    out << text;
}

PcsInstance load_pcs(const std::string& path) {
    auto inst = parse_pcs(read_file(path));
    validate_structure(inst);
    require_feasible_demands(inst);
    return inst;
}

RcsInstance load_rcs(const std::string& path) {
    auto rcs = parse_rcs(read_file(path));
    validate_rcs(rcs);
    for (std::size_t d = 0; d < rcs.demands.size(); ++d) {
        if (!routing_feasible_witness(rcs, rcs.demands[d])) {
            throw InfeasibleInstanceError("demand " + std::to_string(d) + " has no routing-feasible walk");
        }
    }
    return rcs;
}

HopsetInstance load_hopset(const std::string& path) {
    auto hs = parse_hopset(read_file(path));
    validate_hopset(hs);
    return hs;
}

std::string to_json(const PcsInstance& instance) { return pcs_json(instance).dump(2) + "\n"; }

std::string to_json(const ScaledInstance& scaled) {
    json out = pcs_json(scaled.scaled());
    out["delta"] = rational_json(scaled.delta);
    out["theta"] = rational_json(scaled.theta);
    return out.dump(2) + "\n";
}

std::string to_json(const RcsInstance& rcs) {
    json out;
    out["n"] = rcs.n;
    out["visit_groups"] = rcs.visit_groups;
    out["groups"] = rcs.groups;
    json edges = json::array();
    for (const auto& e : rcs.edges) {
        edges.push_back(json{{"u", e.u}, {"v", e.v}, {"cost", rational_json(e.cost)}, {"length", e.length}});
    }
    out["edges"] = std::move(edges);
    json demands = json::array();
    for (const auto& d : rcs.demands) demands.push_back(json{{"s", d.s}, {"t", d.t}, {"ctrl", d.ctrl}});
    out["demands"] = std::move(demands);
    return out.dump(2) + "\n";
}

std::string to_json(const HopsetInstance& hs) {
    json out;
    out["n"] = hs.n;
    json edges = json::array();
    for (const auto& e : hs.edges) edges.push_back(json{{"u", e.u}, {"v", e.v}, {"length", e.length}});
    out["edges"] = std::move(edges);
    json demands = json::array();
    for (const auto& d : hs.demands) {
        demands.push_back(json{{"s", d.s}, {"t", d.t}, {"dist", d.dist}, {"beta", d.beta}});
    }
    out["demands"] = std::move(demands);
    return out.dump(2) + "\n";
}

bool read_flag(std::string_view text, const std::string& key) {
    const json doc = parse_json(text);
    if (!doc.is_object() || !doc.contains(key)) return false;
    if (!doc[key].is_boolean()) throw ParseError("/" + key + ": expected a boolean");
    return doc[key].get<bool>();
}

}  // namespace pcspan
