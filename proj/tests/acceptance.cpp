// End-to-end acceptance run. One PASS/FAIL line per criterion; exit status
// is nonzero if any criterion fails.

#include "sztk/convex_body.hpp"
#include "sztk/extremal.hpp"
#include "sztk/lattice_algebra.hpp"
#include "sztk/monomial_map.hpp"
#include "sztk/sample_set.hpp"

#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace sztk;
using sztk::testing::irrational_segment;
using sztk::testing::qx;
using sztk::testing::rational_body;
using sztk::testing::unit_simplex;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const std::vector<double> kCirclePoints{1.5, 2.0, 4.0, 0.3};

// Circle case at m = 8; returns certified values in kCirclePoints order.
std::vector<double> circle_values(double weight) {
    const ConvexBody segment = rational_body(1, {{0}, {1}});
    const auto samples = circle_samples(256, 1.0, weight);
    SiciakEvaluator eval(std::make_shared<const ConvexBody>(segment), std::make_shared<const WeightedSampleSet>(samples),
                         64);
    std::vector<double> out;
    for (double x : kCirclePoints) {
        const ComplexPoint z{{x, 0.0}};
        const auto r = eval.evaluate(8, z);
        out.push_back(r.status == LpStatus::optimal ? r.log_phi_certified : std::nan(""));
    }
    return out;
}

Outcome classical_circle() {
    const auto values = circle_values(0.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double expected = std::max(0.0, std::log(kCirclePoints[i]));
        const double err = std::abs(values[i] - expected);
        worst = std::isnan(err) ? INFINITY : std::max(worst, err);
    }
    return {worst <= 0.03, "max |certified - log+|z|| = " + fmt(worst)};
}

Outcome torus_simplex() {
    const ConvexBody simplex = unit_simplex(2);
    const auto samples = torus_samples(2, 32, 1.0, 0.0);
    const ComplexPoint z{{2.0, 0.0}, {3.0, 0.0}};
    const auto res = siciak_limsup(simplex, samples, {2, 4, 8}, z);
    const double lo = std::log(3.0) - 0.03;
    const double hi = std::log(3.0) + std::log(45.0) / 8.0 + 0.03;
    bool ok = true;
    std::string detail = "running max";
    for (std::size_t i = 0; i < res.running_max.size(); ++i) {
        const double v = res.running_max[i];
        ok = ok && v >= lo && v <= hi;
        if (i > 0) ok = ok && v >= res.running_max[i - 1];
        detail += " " + fmt(v);
    }
    ok = ok && res.per_degree.back().log_phi_certified >= lo;
    return {ok, detail + " in [" + fmt(lo) + ", " + fmt(hi) + "]"};
}

Outcome weight_shift() {
    const auto base = circle_values(0.0);
    const auto shifted = circle_values(0.7);
    double worst = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        const double err = std::abs(shifted[i] - base[i] - 0.7);
        worst = std::isnan(err) ? INFINITY : std::max(worst, err);
    }
    return {worst <= 1e-6, "max |shift - 0.7| = " + fmt(worst)};
}

Outcome pullback_identity() {
    const ConvexBody segment = rational_body(2, {{0, 0}, {1, 2}});
    const auto samples = torus_samples(2, 64, 1.0, 0.0);
    const std::vector<ComplexPoint> grid{
        {{1.3, 0.0}, {0.8, 0.0}},
        {{2.0, 0.0}, {3.0, 0.0}},
        {{0.5, 0.5}, {1.1, -0.2}},
        {{-1.2, 0.4}, {0.9, 0.9}},
        {{0.7, 0.0}, {1.0, 1.0}},
    };
    const auto report = thm12_check(segment, samples, {2, 4, 8}, grid);
    bool all_optimal = true;
    for (const auto& r : report.rows) all_optimal = all_optimal && std::isfinite(r.log_phi_s);
    return {report.max_difference <= 1e-7 && all_optimal,
            "max |log Phi_S - log Phi_T o F| = " + fmt(report.max_difference) +
                (all_optimal ? "" : " (non-optimal LP)")};
}

Outcome density_necessity() {
    const ConvexBody s = irrational_segment();
    const auto verdict = is_rationally_dense(s);
    bool ok = !verdict.dense && verdict.separating_constraint.size() == 2;
    bool only_origin = true;
    for (unsigned m = 0; m <= 64; ++m) {
        const auto pts = lattice_points(s, m).points;
        only_origin = only_origin && pts.size() == 1 && pts[0] == Exponent{0, 0};
    }
    ok = ok && only_origin;

    const auto samples = torus_samples(2, 8, 1.0, 0.0);
    const double e4 = std::exp(4.0);
    const std::vector<ComplexPoint> grid{{{e4, 0.0}, {e4, 0.0}}, {{2.0, 0.0}, {3.0, 0.0}}};
    const auto report = compare(s, OracleKind::torus_unweighted, samples, {1, 2, 4, 8}, grid);
    double max_certified = 0.0;
    for (const auto& r : report.rows) max_certified = std::max(max_certified, std::abs(r.log_phi_certified));
    ok = ok && max_certified == 0.0;
    const double gap = report.rows[3].error;
    ok = ok && gap >= 9.6;
    return {ok, std::string("dense=") + (verdict.dense ? "true" : "false") + ", lattice points {0} up to m=64: " +
                    (only_origin ? "yes" : "no") + ", max |certified| = " + fmt(max_certified) + ", gap = " + fmt(gap)};
}

std::vector<Integer> column_of(const IntMatrix& m, std::size_t j) {
    std::vector<Integer> v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
    return v;
}

Outcome lattice_suite() {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> pick_n(1, 4);
    std::uniform_int_distribution<long> pos(0, 9);
    std::uniform_int_distribution<long> any(-9, 9);
    int map_ok = 0, snf_ok = 0, reduce_ok = 0;
    const int cases = 200;
    for (int c = 0; c < cases; ++c) {
        const auto n = static_cast<std::size_t>(pick_n(rng));
        const std::size_t l = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(3, n))(rng);

        // Random rational subspace, realized as the span of a body in R^n_+.
        std::vector<std::vector<long>> gens;
        ExactMatrix cols(n, l);
        do {
            gens.assign(1, std::vector<long>(n, 0));
            for (std::size_t k = 0; k < l; ++k) {
                std::vector<long> v(n);
                for (auto& x : v) x = pos(rng);
                gens.push_back(v);
                for (std::size_t i = 0; i < n; ++i) cols(i, k) = qx(v[i]);
            }
        } while (exact_rank(cols) != l);
        const ConvexBody body = rational_body(n, gens);
        const LatticeMap map = construct_L(body);
        if (verify_map(map, body).all() && map.image_dimension() == l) ++map_ok;

        // Smith form of a random matrix.
        const std::size_t r = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
        const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
        IntMatrix a(r, k);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < k; ++j) a(i, j) = any(rng);
        const auto snf = smith_normal_form(a);
        bool snf_good = snf.U * a * snf.V == snf.D && abs(determinant(snf.U)) == 1 && abs(determinant(snf.V)) == 1;
        const auto d = snf.diagonal();
        for (std::size_t i = 0; i + 1 < d.size(); ++i)
            snf_good = snf_good && (d[i] == 0 ? d[i + 1] == 0 : d[i + 1] % d[i] == 0);
        if (snf_good) ++snf_ok;

        // Parallelepiped reduction of random independent integer vectors.
        IntMatrix g(l, l);
        do {
            for (std::size_t i = 0; i < l; ++i)
                for (std::size_t j = 0; j < l; ++j) g(i, j) = any(rng);
        } while (determinant(g) == 0);
        std::vector<std::vector<Integer>> vecs;
        for (std::size_t j = 0; j < l; ++j) vecs.push_back(column_of(g, j));
        const auto trace = parallelepiped_reduce(vecs);
        bool red_good = !trace.determinants.empty() && trace.determinants.back() == 1;
        for (std::size_t i = 1; i < trace.determinants.size(); ++i)
            red_good = red_good && trace.determinants[i] < trace.determinants[i - 1];
        IntMatrix out(l, l);
        for (std::size_t j = 0; j < l; ++j)
            for (std::size_t i = 0; i < l; ++i) out(i, j) = trace.vectors[j][i];
        red_good = red_good && abs(determinant(out)) == 1;
        if (red_good) ++reduce_ok;
    }
    const bool ok = map_ok == cases && snf_ok == cases && reduce_ok == cases;
    return {ok, "verify_map " + std::to_string(map_ok) + "/200, smith " + std::to_string(snf_ok) +
                    "/200, reduction " + std::to_string(reduce_ok) + "/200"};
}

double rel(std::complex<double> a, std::complex<double> b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

double rel_point(const ComplexPoint& a, const ComplexPoint& b) {
    double worst = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, rel(a[j], b[j]));
    return worst;
}

Outcome monomial_suite() {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> pick_n(2, 4);
    std::uniform_int_distribution<long> pos(0, 3);
    std::uniform_real_distribution<double> logmod(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(-3.14159, 3.14159);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    auto random_point = [&](std::size_t n) {
        ComplexPoint z(n);
        for (auto& c : z) c = std::polar(std::exp(logmod(rng)), angle(rng));
        return z;
    };

    double support_dev = 0.0, pull_dev = 0.0, fiber_dev = 0.0, preimage_dev = 0.0;
    for (int c = 0; c < 100; ++c) {
        const auto n = static_cast<std::size_t>(pick_n(rng));
        const std::size_t l = std::uniform_int_distribution<std::size_t>(1, n - 1)(rng);
        std::vector<std::vector<long>> gens;
        ExactMatrix cols(n, l);
        do {
            gens.assign(1, std::vector<long>(n, 0));
            for (std::size_t k = 0; k < l; ++k) {
                std::vector<long> v(n);
                for (auto& x : v) x = pos(rng);
                gens.push_back(v);
                for (std::size_t i = 0; i < n; ++i) cols(i, k) = qx(v[i]);
            }
        } while (exact_rank(cols) != l);
        const auto body = std::make_shared<const ConvexBody>(rational_body(n, gens));
        const LatticeMap map = construct_L(*body);
        const auto t = std::make_shared<const ConvexBody>(preimage_body(*body, map));

        const ComplexPoint z = random_point(n);
        const ComplexPoint w = sztk::apply(map, z);

        const double hs = log_support(*body, z);
        support_dev = std::max(support_dev, std::abs(hs - log_support(*t, w)) / (1.0 + std::abs(hs)));

        const unsigned m = 2;
        SparsePolynomial::Terms terms;
        for (const auto& beta : lattice_points(*t, m).points) terms.emplace(beta, std::complex<double>(coef(rng), coef(rng)));
        const SparsePolynomial p(l, m, std::move(terms), t);
        const auto pulled = pullback_poly(map, p, body);
        pull_dev = std::max(pull_dev, rel(evaluate(pulled, z), evaluate(p, w)));

        ComplexPoint tail(n - l);
        for (auto& x : tail) x = std::polar(std::exp(2.0 * logmod(rng)), angle(rng));
        fiber_dev = std::max(fiber_dev, rel_point(sztk::apply(map, fiber_point(map, z, tail)), w));

        const ComplexPoint target = random_point(l);
        preimage_dev = std::max(preimage_dev, rel_point(sztk::apply(map, solve_preimage(map, target)), target));
    }
    const bool ok = support_dev <= 1e-9 && pull_dev <= 1e-10 && fiber_dev <= 1e-9 && preimage_dev <= 1e-10;
    return {ok, "support " + fmt(support_dev) + ", pullback " + fmt(pull_dev) + ", fiber " + fmt(fiber_dev) +
                    ", preimage " + fmt(preimage_dev)};
}

Outcome lp_invariants() {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> logmod(-0.3, 0.3);
    std::uniform_real_distribution<double> angle(-3.14159, 3.14159);
    std::uniform_real_distribution<double> weight(0.0, 0.5);
    auto random_point = [&](std::size_t n, double lo, double hi) {
        std::uniform_real_distribution<double> lm(lo, hi);
        ComplexPoint z(n);
        for (auto& c : z) c = std::polar(std::exp(lm(rng)), angle(rng));
        return z;
    };
    const unsigned facets = 16;
    int dilation_ok = 0, constraint_ok = 0, weight_ok = 0, basis_ok = 0;
    double dilation_dev = 0.0;
    const int cases = 12;
    const ConvexBody small = unit_simplex(2);
    const ConvexBody big = rational_body(2, {{0, 0}, {2, 0}, {0, 1}, {1, 1}});
    const ConvexBody s = rational_body(2, {{0, 0}, {1, 0}, {1, 1}});

    for (int c = 0; c < cases; ++c) {
        std::vector<ComplexPoint> pts;
        for (int k = 0; k < 40; ++k) pts.push_back(random_point(2, -0.3, 0.3));
        std::vector<double> zero(pts.size(), 0.0), w1(pts.size()), w2(pts.size());
        for (std::size_t k = 0; k < pts.size(); ++k) {
            w1[k] = weight(rng);
            w2[k] = w1[k] + weight(rng);
        }
        const ComplexPoint z = random_point(2, 0.2, 1.0);

        // Dilation: (kS, m) against (S, km) with q = 0.
        const auto base = explicit_samples(pts, zero);
        const unsigned k = 2, m = 2;
        const auto a = siciak_m(s.scaled(k), base, m, z, facets);
        const auto b = siciak_m(s, base, k * m, z, facets);
        const double dev = std::abs(a.log_phi_raw - k * b.log_phi_raw);
        dilation_dev = std::max(dilation_dev, dev);
        if (a.status == LpStatus::optimal && b.status == LpStatus::optimal && dev <= 1e-9) ++dilation_ok;

        // More samples never raise the value.
        std::vector<ComplexPoint> fewer(pts.begin(), pts.begin() + 25);
        const auto sub = explicit_samples(fewer, std::vector<double>(fewer.size(), 0.0));
        const auto full = siciak_m(small, base, 3, z, facets);
        const auto part = siciak_m(small, sub, 3, z, facets);
        if (full.log_phi_raw <= part.log_phi_raw + 1e-9) ++constraint_ok;

        // Larger weights give at least as much room.
        const auto r1 = siciak_m(small, explicit_samples(pts, w1), 3, z, facets);
        const auto r2 = siciak_m(small, explicit_samples(pts, w2), 3, z, facets);
        if (r1.log_phi_raw <= r2.log_phi_raw + 1e-9) ++weight_ok;

        // Larger body, larger value.
        const auto rs = siciak_m(small, base, 3, z, facets);
        const auto rb = siciak_m(big, base, 3, z, facets);
        if (rs.log_phi_raw <= rb.log_phi_raw + 1e-9) ++basis_ok;
    }
    const bool ok = dilation_ok == cases && constraint_ok == cases && weight_ok == cases && basis_ok == cases;
    const auto of = [&](int v) { return std::to_string(v) + "/" + std::to_string(cases); };
    return {ok, "dilation " + of(dilation_ok) + " (max dev " + fmt(dilation_dev) + "), constraints " + of(constraint_ok) +
                    ", weights " + of(weight_ok) + ", basis " + of(basis_ok)};
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        double time_limit;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"1 classical circle extremal function", 10.0, classical_circle},
        {"2 torus simplex two-sided band", 30.0, torus_simplex},
        {"3 constant weight equivariance", 20.0, weight_shift},
        {"4 pullback identity along the monomial map", 10.0, pullback_identity},
        {"5 density necessity on the irrational segment", 5.0, density_necessity},
        {"6 lattice certificate suite", 60.0, lattice_suite},
        {"7 monomial map property suite", 10.0, monomial_suite},
        {"8 LP-level invariants", 60.0, lp_invariants},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.time_limit;
        const bool pass = o.pass && in_time;
        if (!pass) ++failures;
        std::printf("%s criterion %s: %s [%.2fs, limit %.0fs]\n", pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs,
                    c.time_limit);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
