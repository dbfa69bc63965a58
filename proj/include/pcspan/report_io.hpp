#pragma once

#include "pcspan/greedy.hpp"
#include "pcspan/reductions.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pcspan {

// Ordered JSON with rationals as "num/den"; contains no timings, so equal inputs give equal bytes.
std::string report_to_json(const SolveReport& report);
std::string hopset_report_to_json(const HopsetSolution& solution);
std::string junction_to_json(const JunctionResult& result);

struct SolutionFile {
    std::string mode;
    std::vector<int> edges;
    Rational cost;
    std::optional<Rational> theta;  // set for theta-mode reports
};

SolutionFile parse_solution(std::string_view text);

}  // namespace pcspan
