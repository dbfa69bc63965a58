#pragma once

#include "pcspan/junction.hpp"
#include "pcspan/rcsp.hpp"

#include <string>
#include <vector>

namespace pcspan {

struct IterationTrace {
    int root = 0;
    Rational density;
    std::vector<int> resolved;   // original demand ids
    std::vector<int> new_edges;
    std::string origin;
};

struct SolveReport {
    std::string mode;
    SolverConfig config;
    std::vector<int> edges;
    Rational cost;
    std::vector<IterationTrace> iterations;
    std::vector<DemandCheck> witnesses;
    std::int64_t max_product_vertices = 0;
    bool sunk_cost_repricing = true;
};

// Greedy cover by minimum-density junction trees; selected edges cost 0 in later iterations.
SolveReport solve_pcs(const PcsInstance& instance, const SolverConfig& config);

struct DensityLemmaReport {
    Rational opt;
    Rational min_density;
    int k = 0;
    bool holds = false;  // min_density^2 * k <= opt^2
};

DensityLemmaReport density_lemma_check(const PcsInstance& instance, int walk_cap = 12);

}  // namespace pcspan
