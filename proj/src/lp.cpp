#include "pcspan/lp.hpp"

#include "pcspan/errors.hpp"

#include "Highs.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace pcspan {

int LinearProgram::add_variable(Rational cost, std::string name) {
    objective.push_back(std::move(cost));
    names.push_back(std::move(name));
    return static_cast<int>(objective.size()) - 1;
}

int LinearProgram::add_row(LpRow row) {
    rows.push_back(std::move(row));
    return static_cast<int>(rows.size()) - 1;
}

LpSolution solve_lp(const LinearProgram& lp, LpBackend backend) {
    return backend == LpBackend::Highs ? solve_lp_highs(lp) : solve_lp_exact(lp);
}

namespace {

class Tableau {
public:
    Tableau(int rows, int cols) : t_(rows, std::vector<Rational>(cols + 1)), basis_(rows, -1), cols_(cols) {}

    std::vector<Rational>& row(int i) { return t_[i]; }
    int& basic(int i) { return basis_[i]; }
    int rows() const { return static_cast<int>(t_.size()); }
    int cols() const { return cols_; }
    const Rational& rhs(int i) const { return t_[i][cols_]; }

    void pivot(int r, int c) {
        const Rational p = t_[r][c];
        for (auto& x : t_[r]) x /= p;
        for (int i = 0; i < rows(); ++i) {
            if (i == r || t_[i][c] == 0) continue;
            const Rational f = t_[i][c];
            for (int j = 0; j <= cols_; ++j) {
                if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
            }
        }
        basis_[r] = c;
    }

    void drop_row(int r) {
        t_.erase(t_.begin() + r);
        basis_.erase(basis_.begin() + r);
    }

    // Bland's rule; returns false when unbounded.
    bool optimize(const std::vector<Rational>& cost, const std::vector<char>& allowed) {
        while (true) {
            int enter = -1;
            for (int j = 0; j < cols_ && enter < 0; ++j) {
                if (!allowed[j]) continue;
                Rational reduced = cost[j];
                for (int i = 0; i < rows(); ++i) {
                    if (t_[i][j] != 0) reduced -= cost[basis_[i]] * t_[i][j];
                }
                if (reduced < 0) enter = j;
            }
            if (enter < 0) return true;
            int leave = -1;
            Rational best;
            for (int i = 0; i < rows(); ++i) {
                if (t_[i][enter] <= 0) continue;
                Rational ratio = t_[i][cols_] / t_[i][enter];
                if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }

private:
    std::vector<std::vector<Rational>> t_;
    std::vector<int> basis_;
    int cols_;
};

}  // namespace

LpSolution solve_lp_exact(const LinearProgram& lp) {
    const int n = lp.num_variables();
    const int m = static_cast<int>(lp.rows.size());
    int slack_count = 0;
    for (const auto& r : lp.rows) slack_count += r.sense == RowSense::Eq ? 0 : 1;
    // Column layout: originals, slacks, artificials (one per row, possibly unused).
    const int slack0 = n;
    const int art0 = n + slack_count;
    const int cols = art0 + m;
    Tableau tab(m, cols);
    int next_slack = slack0;
    std::vector<char> art_used(m, 0);
    for (int i = 0; i < m; ++i) {
        const auto& r = lp.rows[i];
        auto& row = tab.row(i);
        for (auto [var, coef] : r.terms) row[var] += coef;
        int slack_col = -1;
        if (r.sense != RowSense::Eq) {
            slack_col = next_slack++;
            row[slack_col] = r.sense == RowSense::Le ? 1 : -1;
        }
        row[cols] = r.rhs;
        if (r.rhs < 0) {
            for (auto& x : row) x = -x;
        }
        if (slack_col >= 0 && row[slack_col] == 1) {
            tab.basic(i) = slack_col;
        } else {
            row[art0 + i] = 1;
            tab.basic(i) = art0 + i;
            art_used[i] = 1;
        }
    }

    std::vector<char> allowed(cols, 1);
    for (int i = 0; i < m; ++i) {
        if (!art_used[i]) allowed[art0 + i] = 0;
    }
    std::vector<Rational> phase1(cols, Rational(0));
    for (int i = 0; i < m; ++i) {
        if (art_used[i]) phase1[art0 + i] = 1;
    }
    tab.optimize(phase1, allowed);
    Rational infeas = 0;
    for (int i = 0; i < tab.rows(); ++i) {
        if (tab.basic(i) >= art0) infeas += tab.rhs(i);
    }
    LpSolution sol;
    if (infeas > 0) {
        sol.status = LpStatus::Infeasible;
        return sol;
    }
    for (int i = 0; i < tab.rows();) {
        if (tab.basic(i) < art0) {
            ++i;
            continue;
        }
        int col = -1;
        for (int j = 0; j < art0 && col < 0; ++j) {
            if (tab.row(i)[j] != 0) col = j;
        }
        if (col >= 0) {
            tab.pivot(i, col);
            ++i;
        } else {
            tab.drop_row(i);
        }
    }
    for (int j = art0; j < cols; ++j) allowed[j] = 0;
    std::vector<Rational> phase2(cols, Rational(0));
    for (int j = 0; j < n; ++j) phase2[j] = lp.objective[j];
    if (!tab.optimize(phase2, allowed)) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }
    sol.status = LpStatus::Optimal;
    sol.values.assign(n, Rational(0));
    for (int i = 0; i < tab.rows(); ++i) {
        if (tab.basic(i) < n) sol.values[tab.basic(i)] = tab.rhs(i);
    }
    sol.objective = 0;
    for (int j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.values[j];
    return sol;
}

Residuals lp_residuals(const LinearProgram& lp, const std::vector<Rational>& values) {
    Residuals res;
    for (const auto& v : values) res.min_value = std::min(res.min_value, to_double(v));
    for (const auto& r : lp.rows) {
        Rational lhs = 0;
        for (auto [var, coef] : r.terms) lhs += values[var] * coef;
        const Rational diff = lhs - r.rhs;
        double viol = 0;
        switch (r.sense) {
            case RowSense::Le: viol = std::max(0.0, to_double(diff)); break;
            case RowSense::Ge: viol = std::max(0.0, -to_double(diff)); break;
            case RowSense::Eq: viol = std::fabs(to_double(diff)); break;
        }
        res.max_row_violation = std::max(res.max_row_violation, viol);
    }
    return res;
}

void certify_solution(const LinearProgram& lp, const LpSolution& solution, double tol) {
    if (solution.status != LpStatus::Optimal) throw LpError("LP is not optimal");
    if (static_cast<int>(solution.values.size()) != lp.num_variables()) throw LpError("solution size mismatch");
    const auto res = lp_residuals(lp, solution.values);
    if (res.max_row_violation > tol || res.min_value < -tol) {
        std::ostringstream os;
        os << "LP solution fails certification: row violation " << res.max_row_violation << ", min value "
           << res.min_value;
        throw LpError(os.str());
    }
}

LpSolution solve_lp_highs(const LinearProgram& lp) {
    const int n = lp.num_variables();
    const int m = static_cast<int>(lp.rows.size());
    HighsLp model;
    model.num_col_ = n;
    model.num_row_ = m;
    model.sense_ = ObjSense::kMinimize;
    model.col_cost_.resize(n);
    for (int j = 0; j < n; ++j) model.col_cost_[j] = to_double(lp.objective[j]);
    model.col_lower_.assign(n, 0.0);
    model.col_upper_.assign(n, kHighsInf);
    model.row_lower_.resize(m);
    model.row_upper_.resize(m);
    model.a_matrix_.format_ = MatrixFormat::kRowwise;
    model.a_matrix_.num_col_ = n;
    model.a_matrix_.num_row_ = m;
    model.a_matrix_.start_.assign(1, 0);
    for (int i = 0; i < m; ++i) {
        const auto& r = lp.rows[i];
        const double rhs = to_double(r.rhs);
        model.row_lower_[i] = r.sense == RowSense::Le ? -kHighsInf : rhs;
        model.row_upper_[i] = r.sense == RowSense::Ge ? kHighsInf : rhs;
        for (auto [var, coef] : r.terms) {
            model.a_matrix_.index_.push_back(var);
            model.a_matrix_.value_.push_back(static_cast<double>(coef));
        }
        model.a_matrix_.start_.push_back(static_cast<HighsInt>(model.a_matrix_.index_.size()));
    }

    Highs highs;
    highs.setOptionValue("output_flag", false);
    highs.setOptionValue("solver", std::string("simplex"));
    highs.setOptionValue("random_seed", 0);
    highs.setOptionValue("primal_feasibility_tolerance", 1e-10);
    highs.setOptionValue("dual_feasibility_tolerance", 1e-10);
    if (highs.passModel(std::move(model)) == HighsStatus::kError) throw LpError("HiGHS rejected the model");
    if (highs.run() == HighsStatus::kError) throw LpError("HiGHS failed");
    LpSolution sol;
    const auto status = highs.getModelStatus();
    if (status == HighsModelStatus::kInfeasible) {
        sol.status = LpStatus::Infeasible;
        return sol;
    }
    if (status == HighsModelStatus::kUnbounded || status == HighsModelStatus::kUnboundedOrInfeasible) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }
    if (status != HighsModelStatus::kOptimal) {
        throw LpError("HiGHS ended with status " + highs.modelStatusToString(status));
    }
    const auto& col = highs.getSolution().col_value;
    sol.status = LpStatus::Optimal;
    sol.values.resize(n);
    for (int j = 0; j < n; ++j) {
        const double v = std::max(0.0, col[j]);
        auto snapped = snap_double(v, 1'000'000, 1e-9);
        sol.values[j] = snapped ? *snapped : from_double(v);
    }
    const auto snapped_res = lp_residuals(lp, sol.values);
    if (snapped_res.max_row_violation > 1e-9) {
        for (int j = 0; j < n; ++j) sol.values[j] = from_double(std::max(0.0, col[j]));
    }
    sol.objective = 0;
    for (int j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.values[j];
    certify_solution(lp, sol);
    return sol;
}

std::string to_lp_format(const LinearProgram& lp) {
    std::ostringstream os;
    os << std::setprecision(17);
    auto name = [&](int j) { return lp.names.size() > static_cast<std::size_t>(j) && !lp.names[j].empty() ? lp.names[j] : "v" + std::to_string(j); };
    os << "Minimize\n obj:";
    bool any = false;
    for (int j = 0; j < lp.num_variables(); ++j) {
        if (lp.objective[j] == 0) continue;
        os << " + " << to_double(lp.objective[j]) << " " << name(j);
        any = true;
    }
    if (!any) os << " 0 " << name(0);
    os << "\nSubject To\n";
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        const auto& r = lp.rows[i];
        os << " c" << i << ":";
        for (auto [var, coef] : r.terms) os << (coef < 0 ? " - " : " + ") << std::llabs(coef) << " " << name(var);
        os << (r.sense == RowSense::Le ? " <= " : r.sense == RowSense::Ge ? " >= " : " = ") << to_double(r.rhs) << "\n";
    }
    os << "End\n";
    return os.str();
}

}  // namespace pcspan
