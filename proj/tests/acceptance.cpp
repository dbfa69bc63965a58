// Acceptance checks 1-10. Prints one PASS/FAIL line per criterion; exit status 1 if any fails.
#include "fixtures.hpp"

#include "pcspan/density_lp.hpp"
#include "pcspan/exact_oracle.hpp"
#include "pcspan/generator.hpp"
#include "pcspan/greedy.hpp"
#include "pcspan/height_reduction.hpp"
#include "pcspan/instance_io.hpp"
#include "pcspan/product_graph.hpp"
#include "pcspan/rcsp.hpp"
#include "pcspan/reductions.hpp"
#include "pcspan/report_io.hpp"
#include "pcspan/scaling.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>

using namespace pcspan;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double limit_ms;
    std::function<Outcome()> run;
};

double quality_bound(int k, int m, std::int64_t product_size) {
    const double lg = std::log2(static_cast<double>(std::max<std::int64_t>(product_size, 2)));
    return 4.0 * std::sqrt(static_cast<double>(k)) * std::pow(2.0, m + 1) * lg * lg * lg;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2;
}

Outcome figure2_scaling() {
    const auto scaled = scale_with_delta(fixtures::figure2(), Rational(2), Rational(1, 10)).scaled();
    const std::vector<Rational> expected = {2, 4, 2, 2, 2, 2, 4, -2};
    std::string got;
    bool ok = true;
    for (std::size_t e = 0; e < expected.size(); ++e) {
        ok = ok && scaled.edges[e].r.length == expected[e];
        got += (e ? "," : "") + scaled.edges[e].r.length.str();
    }
    return {ok, "scaled lengths {" + got + "}"};
}

Outcome figure1_walks() {
    const auto rcs = fixtures::figure1();
    const auto red = rcs_to_pcs(rcs);
    const auto catalog = enumerate_feasible_walks(red.pcs, red.pcs.demands[0], 12);
    int revisiting = 0;
    for (const auto& w : catalog.walks) {
        const auto vs = walk_vertices(w, red.pcs);
        if (std::count(vs.begin(), vs.end(), static_cast<int>(fixtures::C)) >= 2) ++revisiting;
    }
    int simple_feasible = 0;
    int simple_paths = 0;
    for (const auto& w : enumerate_walks(red.pcs, fixtures::A, fixtures::E, 12)) {
        auto vs = walk_vertices(w, red.pcs);
        std::sort(vs.begin(), vs.end());
        if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) continue;
        ++simple_paths;
        if (is_routing_feasible(w, rcs.demands[0], rcs)) ++simple_feasible;
    }
    std::ostringstream s;
    s << catalog.walks.size() << " feasible walks, " << revisiting << " revisit c; " << simple_paths
      << " simple a->e paths, " << simple_feasible << " routing-feasible";
    return {revisiting > 0 && simple_feasible == 0, s.str()};
}

Outcome pruning_on_lp_solutions() {
    int solutions = 0, relation_violations = 0, mass_violations = 0, pruned_demands = 0;
    int per_m[3] = {0, 0, 0};
    for (std::uint64_t seed = 1; solutions < 210 && seed < 400; ++seed) {
        GeneratorParams p;
        p.m = static_cast<int>(seed % 3);
        p.n = 4 + static_cast<int>(seed % 2);
        p.k = 2 + static_cast<int>(seed % 2);
        p.tau = 2;
        p.max_length = 2;
        p.max_cost = 9;
        p.seed = 1000 + seed;
        const auto inst = generate_instance(p);
        for (int r = 0; r < inst.n && solutions < 210; ++r) {
            const auto pg = build_product_graph(inst, integer_layers(inst), r);
            const auto jg = build_joined(pg, 2);
            if (!jg) continue;
            const auto lp = build_lp(*jg);
            const auto sol = solve_lp(lp.lp);
            if (sol.status != LpStatus::Optimal) continue;
            ++solutions;
            ++per_m[p.m];
            const auto pruned = prune_all(*jg, lp, sol, pg.budget_caps, inst.m);
            for (std::size_t d = 0; d < pruned.size(); ++d) {
                Rational gamma = 0;
                for (const auto& pv : lp.y) {
                    if (pv.demand == static_cast<int>(d)) gamma += sol.values[pv.var];
                }
                if (gamma == 0) continue;
                ++pruned_demands;
                const auto& g = jg->demands[d];
                const auto& caps = pg.budget_caps[d];
                for (int a : pruned[d].sources) {
                    for (int b : pruned[d].sinks) {
                        for (int c = 0; c <= inst.m; ++c) {
                            if (g.source_labels[a][c] + g.sink_labels[b][c] > caps[c]) {
                                ++relation_violations;
                                break;
                            }
                        }
                    }
                }
                Rational zs = 0, zt = 0;
                for (int a : pruned[d].sources) zs += sol.values[lp.z_source[d][a]];
                for (int b : pruned[d].sinks) zt += sol.values[lp.z_sink[d][b]];
                const Rational bound = gamma / pow2(inst.m + 1);
                if (zs < bound || zt < bound) ++mass_violations;
            }
        }
    }
    std::ostringstream s;
    s << solutions << " LP solutions (m=0/1/2: " << per_m[0] << "/" << per_m[1] << "/" << per_m[2] << "), "
      << pruned_demands << " pruned demands, " << relation_violations << " pairs outside R, " << mass_violations
      << " survivor-mass shortfalls";
    return {solutions >= 200 && per_m[0] > 0 && per_m[1] > 0 && per_m[2] > 0 && relation_violations == 0 &&
                mass_violations == 0,
            s.str()};
}

Outcome product_equivalence() {
    int instances = 0, checks = 0, mismatches = 0;
    for (std::uint64_t seed = 1; instances < 30; ++seed) {
        GeneratorParams p;
        p.n = 4 + static_cast<int>(seed % 4);
        p.k = 1 + static_cast<int>(seed % 3);
        p.m = static_cast<int>(seed % 3);
        p.tau = 1 + static_cast<int>(seed % 2);
        p.max_length = 2;
        p.seed = 2000 + seed;
        const auto inst = generate_instance(p);
        ++instances;
        for (int r = 0; r < inst.n; ++r) {
            const auto rep = equivalence_check(inst, r);
            checks += static_cast<int>(rep.product_side.size());
            mismatches += rep.mismatches;
        }
    }
    std::ostringstream s;
    s << instances << " instances, " << checks << " (root, demand) checks, " << mismatches << " mismatches";
    return {mismatches == 0, s.str()};
}

std::vector<PcsInstance> brute_force_suite(std::uint64_t base_seed, int count) {
    std::vector<PcsInstance> suite;
    for (int i = 0; i < count; ++i) {
        GeneratorParams p;
        p.n = 5;
        p.k = 2 + i % 3;
        p.m = i % 3;
        p.tau = 2;
        p.max_length = 2;
        p.max_cost = 9;
        p.seed = base_seed + i;
        suite.push_back(generate_instance(p));
    }
    return suite;
}

Outcome density_witness() {
    int holds = 0, total = 0;
    std::string worst;
    for (const auto& inst : brute_force_suite(3000, 30)) {
        const auto rep = density_lemma_check(inst, 10);
        ++total;
        if (rep.holds) {
            ++holds;
        } else {
            worst = "density " + to_string(rep.min_density) + " vs OPT " + to_string(rep.opt);
        }
    }
    std::ostringstream s;
    s << holds << "/" << total << " instances with density^2 * k <= OPT^2" << (worst.empty() ? "" : "; " + worst);
    return {holds == total, s.str()};
}

Outcome end_to_end_quality(const std::string& baseline_path, bool calibrate) {
    std::vector<double> ratios;
    int infeasible = 0, over_bound = 0;
    double worst_ratio = 0;
    for (const auto& inst : brute_force_suite(4000, 30)) {
        const auto report = solve_pcs(inst, SolverConfig{});
        for (const auto& c : verify_solution(inst, report.edges)) infeasible += c.feasible ? 0 : 1;
        const auto opt = brute_force_opt(inst, 10).cost;
        const double ratio = to_double(report.cost / opt);
        ratios.push_back(ratio);
        worst_ratio = std::max(worst_ratio, ratio);
        const int k = static_cast<int>(inst.demands.size());
        if (ratio > quality_bound(k, inst.m, report.max_product_vertices)) ++over_bound;
    }
    const double med = median(ratios);
    std::ostringstream s;
    s << ratios.size() << " instances, " << infeasible << " unsatisfied demands, " << over_bound
      << " above the bound, median cost/OPT " << med << ", max " << worst_ratio;
    if (calibrate) {
        nlohmann::ordered_json doc;
        doc["suite"] = "generated n=5, k=2..4, m=0..2, tau=2, seeds 4000..4029";
        doc["median_ratio"] = med;
        write_file(baseline_path, doc.dump(2) + "\n");
        s << " (baseline written)";
    }
    double baseline = -1;
    try {
        baseline = nlohmann::json::parse(read_file(baseline_path))["median_ratio"].get<double>();
        s << ", baseline " << baseline;
    } catch (const std::exception& e) {
        s << ", baseline unreadable: " << e.what();
    }
    const bool ok = infeasible == 0 && over_bound == 0 && med <= 2.0 && baseline > 0 && med <= baseline * 1.1;
    return {ok, s.str()};
}

Outcome theta_soundness() {
    int instances = 0, walks = 0, forward_checked = 0, violations = 0;
    for (std::uint64_t seed = 1; instances < 30; ++seed) {
        GeneratorParams p;
        p.n = 4 + static_cast<int>(seed % 2);
        p.k = 2;
        p.m = static_cast<int>(seed % 2);
        p.regime = seed % 3 == 0 ? Regime::Rational : Regime::RationalNegative;
        p.seed = 5000 + seed;
        const auto inst = generate_instance(p);
        ++instances;
        for (const Rational theta : {Rational(1, 2), Rational(1, 10)}) {
            const auto scaled = scale_instance(inst, theta);
            const auto g = scaled.scaled();
            for (const auto& d : inst.demands) {
                for (const auto& w : enumerate_walks(inst, d.s, d.t, 7)) {
                    ++walks;
                    const bool short_walk = static_cast<int>(w.edges.size()) < scaled.hop_bound;
                    if (short_walk && is_feasible(w, d, inst)) {
                        ++forward_checked;
                        if (!is_theta_feasible(w, d, g, theta)) ++violations;
                    }
                    if (is_theta_feasible(w, d, g, theta) && !is_theta_feasible(w, d, inst, theta)) ++violations;
                }
            }
        }
    }
    std::ostringstream s;
    s << instances << " instances x 2 thetas, " << walks << " walks, " << forward_checked
      << " base-feasible short walks, " << violations << " violations";
    return {violations == 0 && forward_checked > 0, s.str()};
}

Outcome hopset_reduction() {
    int instances = 0, failed_demands = 0, exact_cases = 0, over_bound = 0;
    std::string sizes;
    const HopsetShape shapes[] = {HopsetShape::Path, HopsetShape::Cycle, HopsetShape::Random};
    for (int i = 0; i < 15; ++i) {
        HopsetParams p;
        p.shape = shapes[i % 3];
        p.n = 4 + i % 4;
        p.k = 3 + i % 2;
        p.beta = 1 + (i / 3) % 2 + (p.shape == HopsetShape::Path ? 0 : 1);
        p.slack = i % 2;
        p.seed = 6000 + i;
        const auto hs = generate_hopset(p);
        const auto sol = solve_hopset(hs, SolverConfig{});
        ++instances;
        for (bool ok : verify_hopset(hs, sol.added)) failed_demands += ok ? 0 : 1;
        const auto exact = exact_min_hopset(hs, 16);
        if (!exact) continue;
        ++exact_cases;
        const double size = static_cast<double>(sol.added.size());
        const double best = static_cast<double>(exact->size());
        const double bound = quality_bound(static_cast<int>(hs.demands.size()), 1, sol.report.max_product_vertices);
        if (best == 0 ? size > 0 : size / best > bound) ++over_bound;
        sizes += (sizes.empty() ? "" : " ") + std::to_string(sol.added.size()) + "/" + std::to_string(exact->size());
    }
    std::ostringstream s;
    s << instances << " instances, " << failed_demands << " failed demands, " << exact_cases
      << " exhaustive cases (found/min: " << sizes << "), " << over_bound << " above the bound";
    return {failed_demands == 0 && exact_cases > 0 && over_bound == 0, s.str()};
}

Outcome rcs_reduction() {
    int instances = 0, demands = 0, feasible = 0, mismatches = 0, solved = 0, unrouted = 0;
    for (int i = 0; i < 50; ++i) {
        RcsParams p;
        p.n = 5;
        p.k = 3;
        const int m = 1 + i % 3;
        p.visit_groups = (i / 3) % (m + 1);
        p.avoid_groups = m - p.visit_groups;
        p.max_group_size = 3;
        p.seed = 7000 + i;
        const auto rcs = generate_rcs(p, false);
        const auto red = rcs_to_pcs(rcs);
        ++instances;
        for (std::size_t d = 0; d < rcs.demands.size(); ++d) {
            ++demands;
            const bool routed = routing_feasible_witness(rcs, rcs.demands[d]).has_value();
            const bool reduced = feasible_witness(red.pcs, red.pcs.demands[d]).has_value();
            feasible += routed ? 1 : 0;
            mismatches += routed != reduced ? 1 : 0;
        }
        auto solvable = generate_rcs(p, true);
        const auto report = solve_rcs(solvable, SolverConfig{});
        ++solved;
        for (std::size_t d = 0; d < solvable.demands.size(); ++d) {
            const auto& w = report.witnesses[d].witness;
            if (!w || !is_routing_feasible(*w, solvable.demands[d], solvable)) ++unrouted;
        }
    }
    std::ostringstream s;
    s << instances << " instances, " << demands << " demands (" << feasible << " routing-feasible), " << mismatches
      << " mismatches; " << solved << " solved, " << unrouted << " unrouted demands";
    return {mismatches == 0 && unrouted == 0, s.str()};
}

Outcome determinism() {
    int runs = 0, differing = 0;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        GeneratorParams p;
        p.n = 5;
        p.k = 3;
        p.m = static_cast<int>(seed % 3);
        p.regime = seed % 2 ? Regime::Integer : Regime::RationalNegative;
        p.seed = 8000 + seed;
        const auto inst = generate_instance(p);
        SolverConfig cfg;
        cfg.mode = p.regime == Regime::Integer ? SolveMode::Integer : SolveMode::Theta;
        cfg.seed = 99 + seed;
        const auto a = report_to_json(solve_pcs(inst, cfg));
        const auto b = report_to_json(solve_pcs(inst, cfg));
        ++runs;
        differing += a == b ? 0 : 1;
    }
    std::ostringstream s;
    s << runs << " instance pairs, " << differing << " differing reports";
    return {differing == 0, s.str()};
}

}  // namespace

int main(int argc, char** argv) {
    bool calibrate = false;
    std::string baseline = PCSPAN_BASELINE;
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--calibrate") == 0) calibrate = true;
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    }
    const std::vector<Criterion> criteria = {
        {1, "figure 2 scaling with delta 2", 1, figure2_scaling},
        {2, "figure 1 walk semantics", 1000, figure1_walks},
        {3, "pruning on LP solutions", 30000, pruning_on_lp_solutions},
        {4, "product-graph equivalence", 120000, product_equivalence},
        {5, "density witness", 300000, density_witness},
        {6, "end-to-end quality", 600000, [&] { return end_to_end_quality(baseline, calibrate); }},
        {7, "theta-regime soundness", 120000, theta_soundness},
        {8, "hopset reduction", 300000, hopset_reduction},
        {9, "routing-controlled reduction", 300000, rcs_reduction},
        {10, "determinism", 600000, determinism},
    };
    bool all = true;
    for (const auto& c : criteria) {
        if (only && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = ms <= c.limit_ms;
        const bool pass = out.pass && in_time;
        all = all && pass;
        std::printf("%s criterion %d (%s): %s [%.3f ms, limit %.0f ms%s]\n", pass ? "PASS" : "FAIL", c.id,
                    c.title.c_str(), out.detail.c_str(), ms, c.limit_ms, in_time ? "" : ", over time");
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
