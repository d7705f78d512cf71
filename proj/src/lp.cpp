#include "sztk/lp.hpp"

#include "sztk/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace sztk {

const char* to_string(LpStatus s) {
    switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::infeasible: return "infeasible";
    }
    return "unknown";
}

namespace {

constexpr std::size_t kDegenerateStreakBeforeBland = 50;
constexpr std::size_t kRefactorInterval = 50;
// Entries of the entering column below this fraction of its largest entry
// are treated as zero in the ratio test.
constexpr double kRelativePivot = 1e-9;

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Revised simplex on A y = b, y >= 0 with rows sign-flipped so b >= 0.
// Columns [0, cols) are the problem columns, [cols, cols + rows) the
// artificial unit columns of Phase I. The basis inverse is kept explicitly
// and rebuilt from the original columns every few pivots.
class RevisedSimplex {
public:
    RevisedSimplex(const StandardFormLp& lp, const LpTolerances& tol)
        : rows_(lp.rows), cols_(lp.cols), tol_(tol), a_(rows_, cols_), b_(rows_), sign_(rows_),
          basis_(rows_), binv_(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(rows_))) {
        for (std::size_t i = 0; i < rows_; ++i) {
            const auto r = static_cast<Eigen::Index>(i);
            sign_(r) = lp.rhs[i] < 0.0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < cols_; ++j) a_(r, static_cast<Eigen::Index>(j)) = sign_(r) * lp.matrix[i * cols_ + j];
            b_(r) = sign_(r) * lp.rhs[i];
            basis_[i] = cols_ + i;
        }
        xb_ = b_;
    }

    // Minimizes the sum of artificials; true when it reaches zero.
    bool phase_one() {
        cost_.assign(cols_ + rows_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i) cost_[cols_ + i] = 1.0;
        phase_one_ = true;
        const LpStatus status = iterate();
        phase_one_ = false;
        if (status != LpStatus::optimal) return false;
        double scale = 1.0, infeasibility = 0.0;
        for (Eigen::Index i = 0; i < b_.size(); ++i) scale = std::max(scale, b_(i));
        for (std::size_t i = 0; i < rows_; ++i)
            if (basis_[i] >= cols_) infeasibility += std::max(0.0, xb_(static_cast<Eigen::Index>(i)));
        if (infeasibility > tol_.feasibility * scale) return false;

        // Pivot zero-level artificials out where some problem column allows it.
        for (std::size_t i = 0; i < rows_; ++i) {
            if (basis_[i] < cols_) continue;
            const Eigen::RowVectorXd row = binv_.row(static_cast<Eigen::Index>(i)) * a_;
            Eigen::Index best = -1;
            double size = tol_.pivot;
            for (Eigen::Index j = 0; j < row.size(); ++j)
                if (std::abs(row(j)) > size && !is_basic(static_cast<std::size_t>(j))) {
                    best = j;
                    size = std::abs(row(j));
                }
            if (best >= 0) pivot(i, static_cast<std::size_t>(best), column(static_cast<std::size_t>(best)));
        }
        refactor();
        return true;
    }

    LpStatus phase_two(const std::vector<double>& cost) {
        cost_.assign(cols_ + rows_, 0.0);
        std::copy(cost.begin(), cost.end(), cost_.begin());
        return iterate();
    }

    void extract(StandardFormSolution& out, const std::vector<double>& cost) const {
        out.y.assign(cols_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i)
            if (basis_[i] < cols_) out.y[basis_[i]] = std::max(0.0, xb_(static_cast<Eigen::Index>(i)));
        const Eigen::RowVectorXd pi = prices();
        out.multipliers.assign(rows_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i)
            out.multipliers[i] = sign_(static_cast<Eigen::Index>(i)) * pi(static_cast<Eigen::Index>(i));
        out.value = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) out.value += cost[j] * out.y[j];
        out.pivots = pivots_;
    }

private:
    bool is_basic(std::size_t j) const { return std::find(basis_.begin(), basis_.end(), j) != basis_.end(); }

    Eigen::VectorXd column(std::size_t j) const {
        if (j < cols_) return a_.col(static_cast<Eigen::Index>(j));
        Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows_));
        e(static_cast<Eigen::Index>(j - cols_)) = 1.0;
        return e;
    }

    Eigen::RowVectorXd prices() const {
        Eigen::RowVectorXd cb(static_cast<Eigen::Index>(rows_));
        for (std::size_t i = 0; i < rows_; ++i) cb(static_cast<Eigen::Index>(i)) = cost_[basis_[i]];
        return cb * binv_;
    }

    void refactor() {
        Eigen::MatrixXd basis_matrix(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(rows_));
        for (std::size_t i = 0; i < rows_; ++i) basis_matrix.col(static_cast<Eigen::Index>(i)) = column(basis_[i]);
        binv_ = basis_matrix.partialPivLu().inverse();
        xb_ = binv_ * b_;
        since_refactor_ = 0;
    }

    // Problem columns only ever enter; artificials may only leave.
    LpStatus iterate() {
        std::size_t streak = 0;
        bool fresh = false;
        std::vector<char> rejected(cols_, 0);
        for (;;) {
            if (since_refactor_ >= kRefactorInterval) refactor();
            const bool bland = streak > kDegenerateStreakBeforeBland;
            const Eigen::RowVectorXd pi = prices();
            const Eigen::RowVectorXd reduced = pi * a_;
            std::size_t enter = cols_;
            double most = -tol_.optimality;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (rejected[j]) continue;
                const double d = cost_[j] - reduced(static_cast<Eigen::Index>(j));
                if (d < most) {
                    enter = j;
                    if (bland) break;
                    most = d;
                }
            }
            if (enter == cols_) {
                // Confirm optimality against a freshly factored basis.
                if (fresh || since_refactor_ == 0) return LpStatus::optimal;
                refactor();
                fresh = true;
                continue;
            }
            fresh = false;

            const Eigen::VectorXd alpha = binv_ * a_.col(static_cast<Eigen::Index>(enter));
            const double largest = rows_ == 0 ? 0.0 : alpha.cwiseAbs().maxCoeff();
            const double pivot_floor = std::max(tol_.pivot, kRelativePivot * largest);
            std::size_t leave = rows_;
            double best = 0.0;
            for (std::size_t i = 0; i < rows_; ++i) {
                const double a = alpha(static_cast<Eigen::Index>(i));
                if (a <= pivot_floor) continue;
                const double ratio = std::max(0.0, xb_(static_cast<Eigen::Index>(i))) / a;
                if (leave == rows_) {
                    leave = i;
                    best = ratio;
                    continue;
                }
                const double slack = 1e-12 * (1.0 + std::abs(best));
                if (ratio < best - slack || (ratio <= best + slack && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows_) {
                // A column whose only positive entries are round-off is not a
                // ray; skip it until the basis changes.
                if (phase_one_ || (rows_ > 0 && alpha.maxCoeff() > tol_.pivot)) {
                    rejected[enter] = 1;
                    continue;
                }
                return LpStatus::unbounded;
            }
            std::fill(rejected.begin(), rejected.end(), 0);

            const bool degenerate = best <= tol_.feasibility;
            pivot(leave, enter, alpha);
            streak = degenerate ? streak + 1 : 0;
        }
    }

    void pivot(std::size_t r, std::size_t e, const Eigen::VectorXd& alpha) {
        const auto ri = static_cast<Eigen::Index>(r);
        const double p = alpha(ri);
        binv_.row(ri) /= p;
        xb_(ri) /= p;
        for (Eigen::Index i = 0; i < alpha.size(); ++i) {
            if (i == ri || alpha(i) == 0.0) continue;
            binv_.row(i) -= alpha(i) * binv_.row(ri);
            xb_(i) -= alpha(i) * xb_(ri);
        }
        basis_[r] = e;
        ++pivots_;
        ++since_refactor_;
    }

    std::size_t rows_;
    std::size_t cols_;
    LpTolerances tol_;
    RowMajor a_;
    Eigen::VectorXd b_;
    Eigen::VectorXd sign_;
    std::vector<std::size_t> basis_;
    Eigen::MatrixXd binv_;
    Eigen::VectorXd xb_;
    std::vector<double> cost_;
    std::size_t pivots_ = 0;
    std::size_t since_refactor_ = 0;
    bool phase_one_ = false;
};

} // namespace

StandardFormSolution solve_standard_form(const StandardFormLp& lp, const LpTolerances& tol) {
    if (lp.matrix.size() != lp.rows * lp.cols || lp.rhs.size() != lp.rows || lp.cost.size() != lp.cols)
        throw ValidationError("standard-form LP has inconsistent sizes");
    for (double v : lp.matrix)
        if (!std::isfinite(v)) throw ValidationError("LP matrix has a non-finite entry");

    StandardFormSolution out;
    RevisedSimplex t(lp, tol);
    if (!t.phase_one()) {
        out.status = LpStatus::infeasible;
        return out;
    }
    out.status = t.phase_two(lp.cost);
    t.extract(out, lp.cost);
    return out;
}

LpSolution lp_solve(const LpProblem& problem, const LpTolerances& tol) {
    const std::size_t vars = problem.objective.size();
    const std::size_t rows = problem.rows.size();
    if (problem.bounds.size() != rows) throw ValidationError("LP bounds and rows differ in count");

    // G x + s = h with slacks s >= 0; minimize -<c, x>.
    StandardFormLp lp;
    lp.rows = rows;
    lp.cols = vars + rows;
    lp.matrix.assign(lp.rows * lp.cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
        if (problem.rows[i].size() != vars) throw ValidationError("LP row has the wrong length");
        for (std::size_t j = 0; j < vars; ++j) lp.matrix[i * lp.cols + j] = problem.rows[i][j];
        lp.matrix[i * lp.cols + vars + i] = 1.0;
    }
    lp.rhs = problem.bounds;
    lp.cost.assign(lp.cols, 0.0);
    for (std::size_t j = 0; j < vars; ++j) lp.cost[j] = -problem.objective[j];

    const auto s = solve_standard_form(lp, tol);
    LpSolution out;
    out.status = s.status;
    if (s.status == LpStatus::optimal) {
        out.x.assign(s.y.begin(), s.y.begin() + static_cast<std::ptrdiff_t>(vars));
        out.value = -s.value;
    }
    return out;
}

} // namespace sztk
