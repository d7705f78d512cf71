#pragma once

#include "sztk/exact_field.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace sztk {

class LatticeMap;

using ExactPoint = std::vector<QuadExt>;
using Exponent = std::vector<std::int64_t>;
using ComplexPoint = std::vector<std::complex<double>>;

/// Compact convex polytope S in the closed positive orthant, given by a
/// finite generator list over Q(sqrt d) that contains the origin.
class ConvexBody {
public:
    /// Throws ValidationError unless every generator has length n, every
    /// coordinate is >= 0, the zero vector is listed, and all surds share
    /// `radicand`.
    ConvexBody(std::size_t n, long radicand, std::vector<ExactPoint> vertices);

    std::size_t dimension() const { return n_; }
    long radicand() const { return radicand_; }
    const std::vector<ExactPoint>& vertices() const { return vertices_; }
    /// Floating-point copies of the generators, rounded once.
    const std::vector<std::vector<double>>& vertices_double() const { return vertices_double_; }

    /// dim of the linear span W of S (0 is a generator, so this is also the
    /// affine dimension).
    std::size_t affine_dimension() const { return span_basis_.size(); }
    /// Basis of W taken from the generators themselves.
    const std::vector<ExactPoint>& span_basis() const { return span_basis_; }
    /// Basis of the orthogonal complement of W.
    const std::vector<ExactPoint>& orthogonal_basis() const { return orthogonal_basis_; }

    /// Exact test for x in S.
    bool contains(std::span<const QuadExt> x) const;
    /// Exact test for alpha in mS.
    bool in_dilate(std::span<const std::int64_t> alpha, unsigned m) const;

    /// The body kS, built by scaling every generator.
    ConvexBody scaled(long k) const;

private:
    bool in_span(std::span<const QuadExt> x) const;
    bool in_hull_scaled(std::span<const QuadExt> x, const QuadExt& scale) const;

    std::size_t n_;
    long radicand_;
    std::vector<ExactPoint> vertices_;
    std::vector<std::vector<double>> vertices_double_;
    std::vector<ExactPoint> span_basis_;
    std::vector<ExactPoint> orthogonal_basis_;
};

/// Exponents of the polynomial space supported in mS, sorted lexicographically.
struct LatticePointSet {
    unsigned m = 0;
    std::vector<Exponent> points;
};

/// Outcome of the rational-density test. When dense, `rational_span` is a
/// rational basis of W ∩ Q^n; otherwise `separating_constraint` holds the
/// pair (c, e) of rational parts of one orthogonality constraint c + e*sqrt d
/// whose splitting cuts the rational solution space below dim W.
struct DensityVerdict {
    bool dense = false;
    std::size_t real_dimension = 0;
    std::size_t rational_dimension = 0;
    std::vector<std::vector<Rational>> rational_span;
    std::vector<std::vector<Rational>> separating_constraint;
};

/// max over generators v of <v, xi>.
double support_value(const ConvexBody& body, std::span<const double> xi);

/// support_value at (log|z_1|, ..., log|z_n|). Throws ValidationError when
/// some z_j = 0.
double log_support(const ConvexBody& body, std::span<const std::complex<double>> z);

LatticePointSet lattice_points(const ConvexBody& body, unsigned m);

DensityVerdict is_rationally_dense(const ConvexBody& body);

/// Generators of L^{-1}(S) for an injective rational n x l matrix L, without
/// the sign check. Throws ValidationError if some generator of S has no
/// preimage.
std::vector<ExactPoint> preimage_generators(const ConvexBody& body, const RatMatrix& map);

/// T = L^{-1}(S). Throws ValidationError when S is not inside the image of L
/// or when T leaves the positive orthant.
ConvexBody preimage_body(const ConvexBody& body, const RatMatrix& map);
ConvexBody preimage_body(const ConvexBody& body, const LatticeMap& map);

} // namespace sztk
