#include "sztk/monomial_map.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace sztk {

namespace {

void require_torus_point(std::span<const std::complex<double>> z, std::size_t n, const char* what) {
    if (z.size() != n) throw ValidationError(std::string(what) + " has the wrong dimension");
    for (const auto& c : z)
        if (c == std::complex<double>(0.0, 0.0)) throw ValidationError(std::string(what) + " has a zero coordinate");
}

bool close_relative(const ComplexPoint& a, const ComplexPoint& b, double tol) {
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double scale = std::max(std::abs(a[j]), std::abs(b[j]));
        if (std::abs(a[j] - b[j]) > tol * scale) return false;
    }
    return true;
}

void push(const LatticeMap& map, const std::vector<ComplexPoint>& points, const std::vector<double>& weights,
          std::vector<ComplexPoint>& out_points, std::vector<double>& out_weights) {
    for (std::size_t k = 0; k < points.size(); ++k) {
        ComplexPoint w = sztk::apply(map, points[k]);
        auto hit = std::find_if(out_points.begin(), out_points.end(),
                                [&](const ComplexPoint& u) { return close_relative(u, w, 1e-9); });
        if (hit == out_points.end()) {
            out_points.push_back(std::move(w));
            out_weights.push_back(weights[k]);
        } else {
            auto& slot = out_weights[static_cast<std::size_t>(hit - out_points.begin())];
            slot = std::min(slot, weights[k]);
        }
    }
}

} // namespace

ComplexPoint apply(const LatticeMap& map, std::span<const std::complex<double>> z) {
    const std::size_t n = map.ambient_dimension();
    require_torus_point(z, n, "point");
    ComplexPoint w;
    w.reserve(map.image_dimension());
    std::vector<std::int64_t> eta(n);
    for (std::size_t k = 0; k < map.image_dimension(); ++k) {
        for (std::size_t j = 0; j < n; ++j) eta[j] = map.exponent(k, j);
        w.push_back(monomial(z, eta));
    }
    return w;
}

SparsePolynomial pullback_poly(const LatticeMap& map, const SparsePolynomial& p,
                               std::shared_ptr<const ConvexBody> target) {
    const std::size_t n = map.ambient_dimension();
    const std::size_t l = map.image_dimension();
    if (p.dimension() != l) throw ValidationError("polynomial lives in the wrong dimension for this map");
    SparsePolynomial::Terms out;
    for (const auto& [beta, c] : p.terms()) {
        Exponent alpha(n, 0);
        for (std::size_t k = 0; k < l; ++k)
            for (std::size_t j = 0; j < n; ++j) alpha[j] += beta[k] * map.exponent(k, j);
        if (std::any_of(alpha.begin(), alpha.end(), [](std::int64_t a) { return a < 0; }))
            throw ValidationError("pulled-back exponent leaves N^n; body pair is inconsistent");
        out.emplace(std::move(alpha), c);
    }
    return SparsePolynomial(n, p.degree(), std::move(out), std::move(target));
}

WeightedSampleSet pushforward_weight(const LatticeMap& map, const WeightedSampleSet& samples) {
    std::vector<ComplexPoint> pts, cert;
    std::vector<double> w, cw;
    push(map, samples.points(), samples.weights(), pts, w);
    push(map, samples.certification_points(), samples.certification_weights(), cert, cw);
    return WeightedSampleSet(SampleKind::explicit_list, map.image_dimension(), std::move(pts), std::move(w),
                             std::move(cert), std::move(cw));
}

ComplexPoint solve_preimage(const LatticeMap& map, std::span<const std::complex<double>> w) {
    const std::size_t n = map.ambient_dimension();
    const std::size_t l = map.image_dimension();
    require_torus_point(w, l, "image point");

    Eigen::MatrixXd a(l, n);
    for (std::size_t k = 0; k < l; ++k)
        for (std::size_t j = 0; j < n; ++j) a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) =
            static_cast<double>(map.exponent(k, j));
    Eigen::MatrixXd b(l, 2);
    for (std::size_t k = 0; k < l; ++k) {
        const std::complex<double> lg = std::log(w[k]);
        b(static_cast<Eigen::Index>(k), 0) = lg.real();
        b(static_cast<Eigen::Index>(k), 1) = lg.imag();
    }
    const Eigen::MatrixXd c = a.completeOrthogonalDecomposition().solve(b);

    ComplexPoint z;
    z.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto r = static_cast<Eigen::Index>(j);
        z.push_back(std::exp(std::complex<double>(c(r, 0), c(r, 1))));
    }
    return z;
}

ComplexPoint fiber_point(const LatticeMap& map, std::span<const std::complex<double>> z,
                         std::span<const std::complex<double>> t_tail) {
    const std::size_t n = map.ambient_dimension();
    const std::size_t l = map.image_dimension();
    require_torus_point(z, n, "point");
    require_torus_point(t_tail, n - l, "fiber parameter");

    // t = (1, ..., 1, t''); coordinate j picks up t^{B_j} with B_j the j-th column.
    ComplexPoint out(z.begin(), z.end());
    std::vector<std::int64_t> column(n - l);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = l; i < n; ++i) column[i - l] = map.exponent(i, j);
        out[j] *= monomial(t_tail, column);
    }
    return out;
}

} // namespace sztk
