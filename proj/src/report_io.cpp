#include "pcspan/report_io.hpp"

#include "pcspan/errors.hpp"

#include <json.hpp>

namespace pcspan {

namespace {

using json = nlohmann::ordered_json;

json walk_json(const Walk& w) { return json{{"start", w.start}, {"edges", w.edges}}; }

json config_json(const SolverConfig& c) {
    json out;
    out["epsilon"] = to_string(c.epsilon);
    out["theta"] = to_string(c.theta);
    out["seed"] = c.seed;
    out["max_product_vertices"] = c.max_product_vertices;
    out["rounding_retries"] = c.rounding_retries;
    out["lp_backend"] = c.backend == LpBackend::Highs ? "highs" : "exact-simplex";
    return out;
}

json report_json(const SolveReport& r) {
    json out;
    out["mode"] = r.mode;
    out["config"] = config_json(r.config);
    out["edges"] = r.edges;
    out["cost"] = to_string(r.cost);
    out["sunk_cost_repricing"] = r.sunk_cost_repricing;
    out["max_product_vertices"] = r.max_product_vertices;
    json its = json::array();
    for (const auto& it : r.iterations) {
        json j;
        j["root"] = it.root;
        j["density"] = to_string(it.density);
        j["resolved"] = it.resolved;
        j["new_edges"] = it.new_edges;
        j["origin"] = it.origin;
        its.push_back(std::move(j));
    }
    out["iterations"] = std::move(its);
    json dems = json::array();
    for (const auto& c : r.witnesses) {
        json j;
        j["feasible"] = c.feasible;
        j["witness"] = c.witness ? walk_json(*c.witness) : json(nullptr);
        dems.push_back(std::move(j));
    }
    out["demands"] = std::move(dems);
    return out;
}

}  // namespace

std::string report_to_json(const SolveReport& report) { return report_json(report).dump(2) + "\n"; }

std::string hopset_report_to_json(const HopsetSolution& solution) {
    json out = report_json(solution.report);
    json added = json::array();
    for (const auto& [u, v] : solution.added) added.push_back(json::array({u, v}));
    out["hopset"] = std::move(added);
    out["hopset_size"] = solution.added.size();
    return out.dump(2) + "\n";
}

std::string junction_to_json(const JunctionResult& result) {
    json out;
    out["max_product_vertices"] = result.max_product_vertices;
    if (result.tree) {
        const auto& t = *result.tree;
        out["root"] = t.root;
        out["edges"] = t.edges;
        out["cost"] = to_string(t.cost);
        out["density"] = to_string(t.density);
        out["resolved"] = t.resolved;
        out["origin"] = t.origin;
        json ws = json::array();
        for (const auto& w : t.witnesses) ws.push_back(walk_json(w));
        out["witnesses"] = std::move(ws);
    } else {
        out["root"] = nullptr;
    }
    return out.dump(2) + "\n";
}

SolutionFile parse_solution(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error&) {
        throw ParseError("solution: malformed JSON");
    }
    SolutionFile out;
    if (!doc.is_object()) throw ParseError("solution: expected an object");
    if (!doc.contains("mode") || !doc["mode"].is_string()) throw ParseError("/mode: missing or not a string");
    out.mode = doc["mode"].get<std::string>();
    if (!doc.contains("edges") || !doc["edges"].is_array()) throw ParseError("/edges: missing or not an array");
    for (std::size_t i = 0; i < doc["edges"].size(); ++i) {
        const auto& e = doc["edges"][i];
        if (!e.is_number_integer()) throw ParseError("/edges/" + std::to_string(i) + ": expected an integer");
        out.edges.push_back(e.get<int>());
    }
    if (!doc.contains("cost") || !doc["cost"].is_string()) throw ParseError("/cost: missing or not a string");
    out.cost = parse_rational(doc["cost"].get<std::string>());
    if (out.mode == "theta") {
        if (!doc.contains("config") || !doc["config"].contains("theta")) throw ParseError("/config/theta: missing");
        out.theta = parse_rational(doc["config"]["theta"].get<std::string>());
    }
    return out;
}

}  // namespace pcspan
