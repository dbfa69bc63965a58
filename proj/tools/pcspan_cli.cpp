#include "pcspan/errors.hpp"
#include "pcspan/exact_oracle.hpp"
#include "pcspan/generator.hpp"
#include "pcspan/greedy.hpp"
#include "pcspan/instance_io.hpp"
#include "pcspan/junction.hpp"
#include "pcspan/rcsp.hpp"
#include "pcspan/reductions.hpp"
#include "pcspan/report_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <iostream>
#include <sstream>

namespace {

using namespace pcspan;
using ordered_json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kFailed = 1, kParse = 2, kInfeasible = 3, kInternal = 4 };

struct Options {
    std::string mode;
    std::string instance;
    std::string solution;
    std::string out;
    std::string epsilon = "1/2";
    std::string theta = "1/10";
    std::uint64_t seed = 1;
    std::int64_t max_product_vertices = 10'000'000;
    int rounding_retries = 64;
    int workers = 1;
    std::string backend = "highs";
    GeneratorParams gen;
    std::string regime = "integer";
    std::string suite;
    int oracle_cap = 12;
};

void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
    } else {
        write_file(opt.out, text);
        spdlog::info("wrote {}", opt.out);
    }
}

SolverConfig solver_config(const Options& opt, SolveMode mode) {
    SolverConfig c;
    c.mode = mode;
    c.epsilon = parse_rational(opt.epsilon);
    c.theta = parse_rational(opt.theta);
    if (c.epsilon <= 0 || c.theta <= 0) throw ParameterError("epsilon and theta must be positive");
    c.seed = opt.seed;
    c.max_product_vertices = opt.max_product_vertices;
    c.rounding_retries = opt.rounding_retries;
    c.workers = std::max(1, opt.workers);
    if (opt.backend == "highs") {
        c.backend = LpBackend::Highs;
    } else if (opt.backend == "exact") {
        c.backend = LpBackend::ExactSimplex;
    } else {
        throw ParameterError("unknown LP backend '" + opt.backend + "'");
    }
    return c;
}

bool integer_lengths(const PcsInstance& inst) {
    for (const auto& e : inst.edges) {
        if (e.r.length < 0 || denominator(e.r.length) != 1) return false;
    }
    return true;
}

PcsInstance parse_and_check(const std::string& text) {
    auto inst = parse_pcs(text);
    validate_structure(inst);
    require_feasible_demands(inst);
    return inst;
}

void check_roundtrip(const PcsInstance& inst, const std::string& text) {
    const auto sol = parse_solution(text);
    const auto checks = verify_solution(inst, sol.edges, sol.theta);
    for (std::size_t d = 0; d < checks.size(); ++d) {
        if (!checks[d].feasible) throw InvariantViolation("written solution fails demand " + std::to_string(d));
    }
}

int cmd_solve_pcs(const Options& opt, SolveMode mode) {
    const auto inst = load_pcs(opt.instance);
    const auto report = solve_pcs(inst, solver_config(opt, mode));
    const auto text = report_to_json(report);
    emit(opt, text);
    check_roundtrip(inst, opt.out.empty() ? text : read_file(opt.out));
    spdlog::info("cost {} over {} iterations", to_string(report.cost), report.iterations.size());
    return kOk;
}

int cmd_rcs(const Options& opt) {
    const auto rcs = load_rcs(opt.instance);
    const auto report = solve_rcs(rcs, solver_config(opt, SolveMode::Integer));
    emit(opt, report_to_json(report));
    return kOk;
}

int cmd_hopset(const Options& opt) {
    const auto hs = load_hopset(opt.instance);
    const auto solution = solve_hopset(hs, solver_config(opt, SolveMode::Integer));
    emit(opt, hopset_report_to_json(solution));
    return kOk;
}

int cmd_junction(const Options& opt) {
    const auto inst = load_pcs(opt.instance);
    const auto mode = integer_lengths(inst) ? SolveMode::Integer : SolveMode::Theta;
    const auto result = min_density_junction_tree(inst, solver_config(opt, mode), opt.seed);
    emit(opt, junction_to_json(result));
    return result.tree ? kOk : kFailed;
}

int cmd_verify(const Options& opt) {
    if (opt.solution.empty()) throw ParameterError("verify needs --solution");
    const auto inst = load_pcs(opt.instance);
    const auto sol = parse_solution(read_file(opt.solution));
    for (int e : sol.edges) {
        if (e < 0 || e >= static_cast<int>(inst.edges.size())) throw ParseError("/edges: unknown edge id " + std::to_string(e));
    }
    const auto checks = verify_solution(inst, sol.edges, sol.theta);
    Rational cost = 0;
    for (int e : sol.edges) cost += inst.edges[e].cost;
    bool ok = cost == sol.cost;
    ordered_json out;
    ordered_json dems = ordered_json::array();
    for (const auto& c : checks) {
        ok = ok && c.feasible;
        dems.push_back(c.feasible);
    }
    out["verified"] = ok;
    out["cost"] = to_string(cost);
    out["cost_matches"] = cost == sol.cost;
    out["demands"] = std::move(dems);
    emit(opt, out.dump(2) + "\n");
    return ok ? kOk : kFailed;
}

int cmd_gen(const Options& opt) {
    GeneratorParams p = opt.gen;
    p.regime = parse_regime(opt.regime);
    p.seed = opt.seed;
    emit(opt, to_json(generate_instance(p)));
    return kOk;
}

struct BenchRow {
    std::string name;
    std::string status = "ok";
    int k = 0;
    std::string cost;
    std::string opt;
    std::string ratio;
    double ratio_value = -1;
    double runtime_ms = 0;
    std::vector<std::string> densities;
};

BenchRow bench_one(const Options& opt, const std::filesystem::path& file) {
    BenchRow row;
    row.name = file.filename().string();
    const auto start = std::chrono::steady_clock::now();
    try {
        const auto text = read_file(file.string());
        const auto inst = parse_and_check(text);
        row.k = static_cast<int>(inst.demands.size());
        auto cfg = solver_config(opt, integer_lengths(inst) ? SolveMode::Integer : SolveMode::Theta);
        cfg.workers = 1;
        const auto report = solve_pcs(inst, cfg);
        row.cost = to_string(report.cost);
        for (const auto& it : report.iterations) row.densities.push_back(to_string(it.density));
        if (read_flag(text, "oracle")) {
            const auto best = brute_force_opt(inst, opt.oracle_cap);
            row.opt = to_string(best.cost);
            if (best.cost > 0) {
                const Rational ratio = report.cost / best.cost;
                row.ratio = to_string(ratio);
                row.ratio_value = to_double(ratio);
            } else {
                row.ratio = report.cost == 0 ? "1/1" : "unbounded";
                row.ratio_value = report.cost == 0 ? 1.0 : -1;
            }
        }
    } catch (const std::exception& e) {
        row.status = std::string("error: ") + e.what();
    }
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return row;
}

int cmd_bench(const Options& opt) {
    namespace fs = std::filesystem;
    if (opt.suite.empty() || !fs::is_directory(opt.suite)) throw ParameterError("bench needs --suite <directory>");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(opt.suite)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<BenchRow> rows(files.size());
    const std::size_t workers = static_cast<std::size_t>(std::max(1, opt.workers));
    for (std::size_t base = 0; base < files.size(); base += workers) {
        std::vector<std::future<BenchRow>> batch;
        for (std::size_t i = base; i < std::min(files.size(), base + workers); ++i) {
            batch.push_back(std::async(std::launch::async, bench_one, std::cref(opt), files[i]));
        }
        for (std::size_t i = 0; i < batch.size(); ++i) rows[base + i] = batch[i].get();
    }
    const fs::path out_dir = opt.out.empty() ? fs::path(".") : fs::path(opt.out);
    fs::create_directories(out_dir);
    std::ostringstream csv;
    csv << "instance,status,k,cost,opt,ratio,runtime_ms,densities\n";
    ordered_json summary;
    ordered_json items = ordered_json::array();
    std::vector<double> ratios;
    for (const auto& r : rows) {
        std::string trace;
        for (std::size_t i = 0; i < r.densities.size(); ++i) trace += (i ? ";" : "") + r.densities[i];
        std::string status = r.status;
        std::replace(status.begin(), status.end(), ',', ' ');
        csv << r.name << ',' << status << ',' << r.k << ',' << r.cost << ',' << (r.opt.empty() ? "n/a" : r.opt) << ','
            << (r.ratio.empty() ? "n/a" : r.ratio) << ',' << r.runtime_ms << ',' << trace << '\n';
        ordered_json j;
        j["instance"] = r.name;
        j["status"] = r.status;
        j["k"] = r.k;
        j["cost"] = r.cost.empty() ? ordered_json(nullptr) : ordered_json(r.cost);
        j["opt"] = r.opt.empty() ? ordered_json(nullptr) : ordered_json(r.opt);
        j["ratio"] = r.ratio.empty() ? ordered_json(nullptr) : ordered_json(r.ratio);
        j["density_trace"] = r.densities;
        items.push_back(std::move(j));
        if (r.ratio_value >= 0) ratios.push_back(r.ratio_value);
    }
    summary["instances"] = std::move(items);
    if (!ratios.empty()) {
        std::sort(ratios.begin(), ratios.end());
        const std::size_t mid = ratios.size() / 2;
        summary["median_ratio"] = ratios.size() % 2 ? ratios[mid] : (ratios[mid - 1] + ratios[mid]) / 2;
        summary["max_ratio"] = ratios.back();
    }
    write_file((out_dir / "bench_summary.csv").string(), csv.str());
    write_file((out_dir / "bench_summary.json").string(), summary.dump(2) + "\n");
    const bool all_ok = std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.status == "ok"; });
    return all_ok ? kOk : kFailed;
}

int dispatch(const Options& opt) {
    const bool needs_instance = opt.mode != "gen" && opt.mode != "bench";
    if (needs_instance && opt.instance.empty()) throw ParameterError("mode " + opt.mode + " needs --instance");
    if (opt.mode == "pcs-int") return cmd_solve_pcs(opt, SolveMode::Integer);
    if (opt.mode == "pcs-theta") return cmd_solve_pcs(opt, SolveMode::Theta);
    if (opt.mode == "rcs") return cmd_rcs(opt);
    if (opt.mode == "hopset") return cmd_hopset(opt);
    if (opt.mode == "junction") return cmd_junction(opt);
    if (opt.mode == "verify") return cmd_verify(opt);
    if (opt.mode == "gen") return cmd_gen(opt);
    return cmd_bench(opt);
}

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("pcspan");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* level = std::getenv("PCSPAN_LOG")) spdlog::set_level(spdlog::level::from_str(level));
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    Options opt;
    CLI::App app{"Packing-covering spanner solver, reductions, and benchmarks"};
    app.add_option("--mode", opt.mode, "pcs-int | pcs-theta | rcs | hopset | junction | verify | gen | bench")
        ->required()
        ->check(CLI::IsMember({"pcs-int", "pcs-theta", "rcs", "hopset", "junction", "verify", "gen", "bench"}));
    app.add_option("--instance,instance", opt.instance, "Instance JSON file");
    app.add_option("--solution", opt.solution, "Report JSON to verify");
    app.add_option("--out", opt.out, "Output file (bench: output directory)");
    app.add_option("--epsilon", opt.epsilon, "Height parameter as num/den")->capture_default_str();
    app.add_option("--theta", opt.theta, "Length relaxation as num/den")->capture_default_str();
    app.add_option("--seed", opt.seed, "Master seed")->capture_default_str();
    app.add_option("--max-product-vertices", opt.max_product_vertices, "Product graph size cap")->capture_default_str();
    app.add_option("--rounding-retries", opt.rounding_retries, "Rounding runs per root")->capture_default_str();
    app.add_option("--workers", opt.workers, "Concurrent roots or bench instances")->capture_default_str();
    app.add_option("--lp-backend", opt.backend, "highs | exact")->capture_default_str();
    app.add_option("--n", opt.gen.n, "gen: vertices")->capture_default_str();
    app.add_option("--k", opt.gen.k, "gen: demands")->capture_default_str();
    app.add_option("--m", opt.gen.m, "gen: resources besides length")->capture_default_str();
    app.add_option("--packing", opt.gen.packing, "gen: packing resources (-1: half of m)")->capture_default_str();
    app.add_option("--tau", opt.gen.tau, "gen: magnitude threshold")->capture_default_str();
    app.add_option("--max-length", opt.gen.max_length, "gen: integer length bound")->capture_default_str();
    app.add_option("--regime", opt.regime, "gen: integer | rational | rational-negative")->capture_default_str();
    app.add_option("--suite", opt.suite, "bench: directory of instance files");
    app.add_option("--oracle-cap", opt.oracle_cap, "bench: walk edge cap for the brute-force oracle")->capture_default_str();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }
    try {
        return dispatch(opt);
    } catch (const ParseError& e) {
        spdlog::error("parse error: {}", e.what());
        return kParse;
    } catch (const ParameterError& e) {
        spdlog::error("parameter error: {}", e.what());
        return kParse;
    } catch (const InfeasibleInstanceError& e) {
        spdlog::error("infeasible instance: {}", e.what());
        return kInfeasible;
    } catch (const DivisionUndefinedError& e) {
        spdlog::error("infeasible instance: {}", e.what());
        return kInfeasible;
    } catch (const InvariantViolation& e) {
        spdlog::error("internal invariant violation: {}", e.what());
        return kInternal;
    } catch (const std::exception& e) {
        spdlog::error("error: {}", e.what());
        return kInternal;
    }
}
