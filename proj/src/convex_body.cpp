#include "sztk/convex_body.hpp"

#include "sztk/lattice_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sztk {

namespace {

ExactMatrix rows_matrix(std::size_t cols, const std::vector<ExactPoint>& rows) {
    return ExactMatrix::from_rows(cols, rows);
}

bool all_zero(std::span<const QuadExt> v) {
    return std::all_of(v.begin(), v.end(), [](const QuadExt& x) { return x.is_zero(); });
}

} // namespace

ConvexBody::ConvexBody(std::size_t n, long radicand, std::vector<ExactPoint> vertices)
    : n_(n), radicand_(radicand), vertices_(std::move(vertices)) {
    if (n_ == 0) throw ValidationError("body dimension must be positive");
    if (!is_square_free(radicand_)) throw ValidationError("radicand must be square-free and >= 2");
    if (vertices_.empty()) throw ValidationError("body needs at least one generator");
    bool has_origin = false;
    for (const auto& v : vertices_) {
        if (v.size() != n_) throw ValidationError("generator length differs from n");
        for (const auto& x : v) {
            if (!x.is_rational() && x.radicand() != radicand_)
                throw ValidationError("generator uses radicand " + std::to_string(x.radicand()) +
                                      ", body radicand is " + std::to_string(radicand_));
            if (qext_sign(x) < 0) throw ValidationError("generator has a negative coordinate " + to_string(x));
        }
        has_origin = has_origin || all_zero(v);
    }
    if (!has_origin) throw ValidationError("the origin must be listed among the generators");

    vertices_double_.reserve(vertices_.size());
    for (const auto& v : vertices_) {
        std::vector<double> d;
        d.reserve(n_);
        for (const auto& x : v) d.push_back(x.to_double());
        vertices_double_.push_back(std::move(d));
    }

    // Greedy basis of W drawn from the generators.
    std::vector<ExactPoint> chosen;
    for (const auto& v : vertices_) {
        if (all_zero(v)) continue;
        auto trial = chosen;
        trial.push_back(v);
        if (exact_rank(rows_matrix(n_, trial)) == trial.size()) chosen = std::move(trial);
        if (chosen.size() == n_) break;
    }
    span_basis_ = std::move(chosen);
    if (span_basis_.empty()) {
        for (std::size_t j = 0; j < n_; ++j) {
            ExactPoint e(n_, QuadExt(0));
            e[j] = QuadExt(1);
            orthogonal_basis_.push_back(std::move(e));
        }
    } else {
        orthogonal_basis_ = exact_kernel(rows_matrix(n_, span_basis_));
    }
}

bool ConvexBody::in_span(std::span<const QuadExt> x) const {
    for (const auto& w : orthogonal_basis_) {
        QuadExt dot(0);
        for (std::size_t j = 0; j < n_; ++j) dot += w[j] * x[j];
        if (!dot.is_zero()) return false;
    }
    return true;
}

bool ConvexBody::in_hull_scaled(std::span<const QuadExt> x, const QuadExt& scale) const {
    // x = sum_k lambda_k * scale * v_k, sum lambda_k + slack = 1, all >= 0.
    std::vector<const ExactPoint*> active;
    for (const auto& v : vertices_)
        if (!all_zero(v)) active.push_back(&v);
    const std::size_t vars = active.size() + 1;
    ExactMatrix a(n_ + 1, vars, QuadExt(0));
    for (std::size_t k = 0; k < active.size(); ++k) {
        for (std::size_t j = 0; j < n_; ++j) a(j, k) = scale * (*active[k])[j];
        a(n_, k) = QuadExt(1);
    }
    a(n_, vars - 1) = QuadExt(1);
    std::vector<QuadExt> b(x.begin(), x.end());
    b.emplace_back(1);
    return nonnegative_feasible(a, std::span<const QuadExt>(b));
}

bool ConvexBody::contains(std::span<const QuadExt> x) const {
    if (x.size() != n_) throw ValidationError("point length differs from body dimension");
    for (const auto& c : x)
        if (qext_sign(c) < 0) return false;
    return in_span(x) && in_hull_scaled(x, QuadExt(1));
}

bool ConvexBody::in_dilate(std::span<const std::int64_t> alpha, unsigned m) const {
    if (alpha.size() != n_) throw ValidationError("exponent length differs from body dimension");
    if (std::any_of(alpha.begin(), alpha.end(), [](std::int64_t a) { return a < 0; })) return false;
    if (m == 0) return std::all_of(alpha.begin(), alpha.end(), [](std::int64_t a) { return a == 0; });
    ExactPoint x;
    x.reserve(n_);
    for (auto a : alpha) x.emplace_back(static_cast<long>(a));
    return in_span(x) && in_hull_scaled(x, QuadExt(static_cast<long>(m)));
}

ConvexBody ConvexBody::scaled(long k) const {
    if (k < 0) throw ValidationError("scale factor must be non-negative");
    std::vector<ExactPoint> v = vertices_;
    for (auto& p : v)
        for (auto& x : p) x *= QuadExt(k);
    return ConvexBody(n_, radicand_, std::move(v));
}

double support_value(const ConvexBody& body, std::span<const double> xi) {
    if (xi.size() != body.dimension()) throw ValidationError("direction length differs from body dimension");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : body.vertices_double()) {
        double s = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j) s += v[j] * xi[j];
        best = std::max(best, s);
    }
    return best;
}

double log_support(const ConvexBody& body, std::span<const std::complex<double>> z) {
    if (z.size() != body.dimension()) throw ValidationError("point length differs from body dimension");
    std::vector<double> xi;
    xi.reserve(z.size());
    for (const auto& c : z) {
        if (c == std::complex<double>(0.0, 0.0)) throw ValidationError("log_support needs nonzero coordinates");
        xi.push_back(std::log(std::abs(c)));
    }
    return support_value(body, xi);
}

LatticePointSet lattice_points(const ConvexBody& body, unsigned m) {
    const std::size_t n = body.dimension();
    LatticePointSet out;
    out.m = m;

    std::vector<std::int64_t> upper(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        QuadExt top(0);
        for (const auto& v : body.vertices())
            if (qext_sign(v[j] - top) > 0) top = v[j];
        const Integer u = (QuadExt(static_cast<long>(m)) * top).floor();
        if (!u.fits_slong_p()) throw ValidationError("dilate too large to enumerate");
        upper[j] = u.get_si();
    }

    Exponent alpha(n, 0);
    for (;;) {
        if (body.in_dilate(alpha, m)) out.points.push_back(alpha);
        // Odometer with the last coordinate fastest: lexicographic order.
        std::size_t j = n;
        while (j > 0) {
            --j;
            if (alpha[j] < upper[j]) {
                ++alpha[j];
                break;
            }
            alpha[j] = 0;
            if (j == 0) return out;
        }
    }
}

DensityVerdict is_rationally_dense(const ConvexBody& body) {
    const std::size_t n = body.dimension();
    DensityVerdict out;
    out.real_dimension = body.affine_dimension();

    std::vector<std::vector<Rational>> doubled;
    for (const auto& w : body.orthogonal_basis()) {
        std::vector<Rational> c(n), e(n);
        for (std::size_t j = 0; j < n; ++j) {
            c[j] = w[j].rational_part();
            e[j] = w[j].surd_part();
        }
        doubled.push_back(c);
        doubled.push_back(e);
        const std::size_t constraints = doubled.size() / 2;
        if (out.separating_constraint.empty() && rank(RatMatrix::from_rows(n, doubled)) > constraints)
            out.separating_constraint = {c, e};
    }

    const RatMatrix system = doubled.empty() ? RatMatrix(1, n, Rational(0)) : RatMatrix::from_rows(n, doubled);
    out.rational_span = kernel_basis(system);
    out.rational_dimension = out.rational_span.size();
    out.dense = out.rational_dimension == out.real_dimension;
    if (out.dense) out.separating_constraint.clear();
    else out.rational_span.clear();
    return out;
}

std::vector<ExactPoint> preimage_generators(const ConvexBody& body, const RatMatrix& map) {
    if (map.rows() != body.dimension()) throw ValidationError("map target dimension differs from body dimension");
    ExactMatrix l(map.rows(), map.cols());
    for (std::size_t i = 0; i < map.rows(); ++i)
        for (std::size_t j = 0; j < map.cols(); ++j) l(i, j) = QuadExt(map(i, j));
    if (exact_rank(l) != map.cols()) throw ValidationError("map is not injective");

    std::vector<ExactPoint> out;
    out.reserve(body.vertices().size());
    for (const auto& v : body.vertices()) {
        auto t = solve(l, std::span<const QuadExt>(v));
        if (!t) throw ValidationError("generator " + std::to_string(out.size()) + " of S is outside the image of L");
        out.push_back(std::move(*t));
    }
    return out;
}

ConvexBody preimage_body(const ConvexBody& body, const RatMatrix& map) {
    auto gens = preimage_generators(body, map);
    for (const auto& t : gens)
        for (const auto& x : t)
            if (qext_sign(x) < 0) throw ValidationError("preimage body leaves the positive orthant; L is defective");
    return ConvexBody(map.cols(), body.radicand(), std::move(gens));
}

ConvexBody preimage_body(const ConvexBody& body, const LatticeMap& map) {
    return preimage_body(body, map.rational_matrix());
}

} // namespace sztk
