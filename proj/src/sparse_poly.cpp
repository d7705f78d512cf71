#include "sztk/sparse_poly.hpp"

#include <algorithm>
#include <cmath>

namespace sztk {

std::complex<double> monomial(std::span<const std::complex<double>> z, std::span<const std::int64_t> alpha) {
    std::complex<double> r(1.0, 0.0);
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        std::int64_t e = alpha[j];
        if (e == 0) continue;
        std::complex<double> base = e < 0 ? 1.0 / z[j] : z[j];
        std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
        std::complex<double> acc(1.0, 0.0);
        while (k > 0) {
            if (k & 1U) acc *= base;
            base *= base;
            k >>= 1U;
        }
        r *= acc;
    }
    return r;
}

SparsePolynomial::SparsePolynomial(std::size_t n, unsigned m, Terms terms, std::shared_ptr<const ConvexBody> body)
    : n_(n), m_(m), terms_(std::move(terms)), body_(std::move(body)) {
    if (body_ && body_->dimension() != n_) throw ValidationError("polynomial and body dimensions differ");
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first.size() != n_) throw ValidationError("exponent has the wrong length");
        if (it->second == std::complex<double>(0.0, 0.0)) {
            it = terms_.erase(it);
            continue;
        }
        if (body_ && !body_->in_dilate(it->first, m_)) throw ValidationError("exponent lies outside mS");
        ++it;
    }
}

SparsePolynomial SparsePolynomial::scaled(std::complex<double> factor) const {
    Terms t = terms_;
    for (auto& [alpha, c] : t) c *= factor;
    return SparsePolynomial(n_, m_, std::move(t), body_);
}

std::complex<double> evaluate(const SparsePolynomial& p, std::span<const std::complex<double>> z) {
    if (z.size() != p.dimension()) throw ValidationError("evaluation point has the wrong dimension");
    std::complex<double> sum(0.0, 0.0);
    for (const auto& [alpha, c] : p.terms()) sum += c * monomial(z, alpha);
    return sum;
}

SparsePolynomial multiply(const SparsePolynomial& p, const SparsePolynomial& q) {
    if (p.dimension() != q.dimension()) throw ValidationError("polynomial dimensions differ");
    if (p.body() != q.body()) throw ValidationError("polynomials carry different body tags");
    SparsePolynomial::Terms out;
    for (const auto& [a, ca] : p.terms())
        for (const auto& [b, cb] : q.terms()) {
            Exponent s(a.size());
            for (std::size_t j = 0; j < s.size(); ++j) s[j] = a[j] + b[j];
            out[s] += ca * cb;
        }
    return SparsePolynomial(p.dimension(), p.degree() + q.degree(), std::move(out), p.body());
}

double weighted_sup_norm(const SparsePolynomial& p, std::span<const ComplexPoint> points,
                         std::span<const double> weights, unsigned m) {
    if (points.size() != weights.size()) throw ValidationError("sample and weight counts differ");
    double best = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (weights[k] == kInfiniteWeight) continue;
        const double v = std::abs(evaluate(p, points[k])) * std::exp(-static_cast<double>(m) * weights[k]);
        best = std::max(best, v);
    }
    return best;
}

double weighted_sup_norm(const SparsePolynomial& p, const WeightedSampleSet& samples, unsigned m) {
    return weighted_sup_norm(p, samples.points(), samples.weights(), m);
}

} // namespace sztk
