#include "sztk/lp.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <random>

using namespace sztk;

namespace {

// Best objective over all vertices of {G x <= h, x >= 0}: every choice of
// n tight constraints among the m + n is solved directly.
double vertex_enumeration(const LpProblem& p, bool& feasible) {
    const std::size_t n = p.objective.size(), m = p.rows.size();
    const std::size_t total = m + n;
    Eigen::MatrixXd all(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(n));
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(total));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) all(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = p.rows[i][j];
        rhs(static_cast<Eigen::Index>(i)) = p.bounds[i];
    }
    for (std::size_t j = 0; j < n; ++j) {
        all.row(static_cast<Eigen::Index>(m + j)).setZero();
        all(static_cast<Eigen::Index>(m + j), static_cast<Eigen::Index>(j)) = -1.0;
        rhs(static_cast<Eigen::Index>(m + j)) = 0.0;
    }
    feasible = false;
    double best = -std::numeric_limits<double>::infinity();
    std::vector<bool> pick(total, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n), true);
    do {
        Eigen::MatrixXd a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        Eigen::VectorXd b(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0, r = 0; i < total; ++i)
            if (pick[i]) {
                a.row(static_cast<Eigen::Index>(r)) = all.row(static_cast<Eigen::Index>(i));
                b(static_cast<Eigen::Index>(r++)) = rhs(static_cast<Eigen::Index>(i));
            }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
        if (lu.rank() < static_cast<Eigen::Index>(n)) continue;
        const Eigen::VectorXd x = lu.solve(b);
        if (((all * x - rhs).array() > 1e-9).any()) continue;
        feasible = true;
        double v = 0.0;
        for (std::size_t j = 0; j < n; ++j) v += p.objective[j] * x(static_cast<Eigen::Index>(j));
        best = std::max(best, v);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return best;
}

} // namespace

TEST_CASE("lp_solve examples") {
    const auto one = lp_solve({{1.0}, {{1.0}}, {3.0}});
    CHECK(one.status == LpStatus::optimal);
    CHECK(one.value == doctest::Approx(3.0));

    const auto two = lp_solve({{1.0, 1.0}, {{1.0, 0.0}, {0.0, 1.0}}, {1.0, 2.0}});
    CHECK(two.status == LpStatus::optimal);
    CHECK(two.value == doctest::Approx(3.0));
    CHECK(two.x[0] == doctest::Approx(1.0));
    CHECK(two.x[1] == doctest::Approx(2.0));

    CHECK(lp_solve({{1.0}, {}, {}}).status == LpStatus::unbounded);
    CHECK(lp_solve({{1.0}, {{-1.0}}, {-1.0}}).status == LpStatus::unbounded);
    CHECK(lp_solve({{1.0}, {{1.0}, {-1.0}}, {1.0, -2.0}}).status == LpStatus::infeasible);
}

TEST_CASE("lp_solve agrees with vertex enumeration") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.1, 2.0);
    int compared = 0;
    for (int it = 0; it < 300; ++it) {
        const std::size_t n = 2 + static_cast<std::size_t>(it % 3);
        const std::size_t m = 2 + static_cast<std::size_t>(it % 4);
        LpProblem p;
        for (std::size_t j = 0; j < n; ++j) p.objective.push_back(u(rng));
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<double> row(n);
            for (auto& v : row) v = u(rng);
            p.rows.push_back(row);
            p.bounds.push_back(it % 5 == 0 ? u(rng) : pos(rng));
        }
        // A box keeps every instance bounded so enumeration is conclusive.
        std::vector<double> box(n, 1.0);
        p.rows.push_back(box);
        p.bounds.push_back(5.0);

        bool feasible = false;
        const double expected = vertex_enumeration(p, feasible);
        const auto sol = lp_solve(p);
        if (!feasible) {
            CHECK(sol.status == LpStatus::infeasible);
            continue;
        }
        REQUIRE(sol.status == LpStatus::optimal);
        CHECK(sol.value == doctest::Approx(expected).epsilon(1e-9));
        for (std::size_t i = 0; i < p.rows.size(); ++i) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < n; ++j) lhs += p.rows[i][j] * sol.x[j];
            CHECK(lhs <= p.bounds[i] + 1e-9);
        }
        ++compared;
    }
    CHECK(compared > 200);
}

TEST_CASE("standard form multipliers certify optimality") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.0, 1.0);
    for (int it = 0; it < 100; ++it) {
        StandardFormLp lp;
        lp.rows = 3;
        lp.cols = 8;
        for (std::size_t k = 0; k < lp.rows * lp.cols; ++k) lp.matrix.push_back(u(rng));
        // rhs = A y0 for some y0 >= 0 keeps the instance feasible.
        std::vector<double> y0(lp.cols);
        for (auto& v : y0) v = pos(rng);
        for (std::size_t i = 0; i < lp.rows; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < lp.cols; ++j) s += lp.matrix[i * lp.cols + j] * y0[j];
            lp.rhs.push_back(s);
        }
        for (std::size_t j = 0; j < lp.cols; ++j) lp.cost.push_back(pos(rng));
        const auto sol = solve_standard_form(lp);
        REQUIRE(sol.status == LpStatus::optimal);
        double dual = 0.0;
        for (std::size_t i = 0; i < lp.rows; ++i) dual += lp.rhs[i] * sol.multipliers[i];
        CHECK(dual == doctest::Approx(sol.value).epsilon(1e-9));
        for (std::size_t j = 0; j < lp.cols; ++j) {
            double reduced = lp.cost[j];
            for (std::size_t i = 0; i < lp.rows; ++i) reduced -= lp.matrix[i * lp.cols + j] * sol.multipliers[i];
            CHECK(reduced >= -1e-9);
            CHECK(sol.y[j] >= 0.0);
        }
    }
}

TEST_CASE("degenerate problems terminate") {
    // Many copies of the same constraint through the origin.
    LpProblem p;
    p.objective = {1.0, 1.0};
    for (int k = 0; k < 30; ++k) {
        p.rows.push_back({1.0, -1.0});
        p.bounds.push_back(0.0);
        p.rows.push_back({-1.0, 1.0});
        p.bounds.push_back(0.0);
    }
    p.rows.push_back({1.0, 1.0});
    p.bounds.push_back(2.0);
    const auto sol = lp_solve(p);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.value == doctest::Approx(2.0));
    CHECK(sol.x[0] == doctest::Approx(1.0));
}
