#pragma once

#include "pcspan/rational.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pcspan {

enum class RowSense { Le, Ge, Eq };

struct LpRow {
    std::vector<std::pair<int, std::int64_t>> terms;  // (variable, coefficient)
    RowSense sense = RowSense::Le;
    Rational rhs;
};

// minimize objective . x subject to rows, x >= 0.
struct LinearProgram {
    std::vector<Rational> objective;
    std::vector<LpRow> rows;
    std::vector<std::string> names;

    int add_variable(Rational cost, std::string name = {});
    int add_row(LpRow row);
    int num_variables() const { return static_cast<int>(objective.size()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class LpBackend { Highs, ExactSimplex };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Rational objective;
    std::vector<Rational> values;
};

LpSolution solve_lp(const LinearProgram& lp, LpBackend backend = LpBackend::Highs);
LpSolution solve_lp_exact(const LinearProgram& lp);
LpSolution solve_lp_highs(const LinearProgram& lp);

// Largest row violation and most negative value; throws LpError when either exceeds tol.
struct Residuals {
    double max_row_violation = 0;
    double min_value = 0;
};
Residuals lp_residuals(const LinearProgram& lp, const std::vector<Rational>& values);
void certify_solution(const LinearProgram& lp, const LpSolution& solution, double tol = 1e-9);

// CPLEX LP text format.
std::string to_lp_format(const LinearProgram& lp);

}  // namespace pcspan
