#pragma once

#include <cstddef>
#include <vector>

namespace sztk {

enum class LpStatus { optimal, unbounded, infeasible };

const char* to_string(LpStatus s);

struct LpTolerances {
    double feasibility = 1e-9;
    double pivot = 1e-12;
    double optimality = 1e-9;
};

/// maximize <objective, x> subject to rows * x <= bounds, x >= 0.
struct LpProblem {
    std::vector<double> objective;
    std::vector<std::vector<double>> rows;
    std::vector<double> bounds;
};

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    std::vector<double> x;
    double value = 0.0;
};

LpSolution lp_solve(const LpProblem& problem, const LpTolerances& tol = {});

/// minimize <cost, y> subject to A y = rhs, y >= 0, with A dense row-major.
struct StandardFormLp {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> matrix;
    std::vector<double> rhs;
    std::vector<double> cost;
};

struct StandardFormSolution {
    LpStatus status = LpStatus::infeasible;
    std::vector<double> y;
    /// Simplex multipliers pi at the final basis: cost - A^T pi >= 0 at an
    /// optimum and <rhs, pi> equals the optimal value.
    std::vector<double> multipliers;
    double value = 0.0;
    std::size_t pivots = 0;
};

/// Two-phase revised simplex with an explicit basis inverse, refactored
/// every 50 pivots. Entering column by most negative
/// reduced cost; after a run of degenerate pivots the rule falls back to
/// Bland's smallest-index choice until progress resumes. Ratio-test ties
/// always go to the smallest basic index.
StandardFormSolution solve_standard_form(const StandardFormLp& lp, const LpTolerances& tol = {});

} // namespace sztk
