#pragma once

#include "sztk/convex_body.hpp"
#include "sztk/sample_set.hpp"

#include <complex>
#include <map>
#include <memory>

namespace sztk {

/// z^alpha for alpha of either sign, by repeated squaring; 0^0 = 1.
std::complex<double> monomial(std::span<const std::complex<double>> z, std::span<const std::int64_t> alpha);

/// Polynomial with complex coefficients supported in mS, at a declared
/// degree m. The body tag may be null for untagged polynomials; when set,
/// the constructor checks that every exponent lies in lattice_points(S, m).
class SparsePolynomial {
public:
    using Terms = std::map<Exponent, std::complex<double>>;

    SparsePolynomial(std::size_t n, unsigned m, Terms terms, std::shared_ptr<const ConvexBody> body = nullptr);

    std::size_t dimension() const { return n_; }
    unsigned degree() const { return m_; }
    const Terms& terms() const { return terms_; }
    const std::shared_ptr<const ConvexBody>& body() const { return body_; }

    SparsePolynomial scaled(std::complex<double> factor) const;

private:
    std::size_t n_;
    unsigned m_;
    Terms terms_;
    std::shared_ptr<const ConvexBody> body_;
};

/// Sum of a_alpha z^alpha in lexicographic exponent order.
std::complex<double> evaluate(const SparsePolynomial& p, std::span<const std::complex<double>> z);

/// Product of degree m + m'. Throws ValidationError on different body tags.
SparsePolynomial multiply(const SparsePolynomial& p, const SparsePolynomial& q);

/// max_k |p(w_k)| e^{-m q_k}; +inf weights contribute nothing.
double weighted_sup_norm(const SparsePolynomial& p, std::span<const ComplexPoint> points,
                         std::span<const double> weights, unsigned m);
/// Same, over the primary samples of the set.
double weighted_sup_norm(const SparsePolynomial& p, const WeightedSampleSet& samples, unsigned m);

} // namespace sztk
