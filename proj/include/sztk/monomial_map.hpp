#pragma once

#include "sztk/lattice_map.hpp"
#include "sztk/sample_set.hpp"
#include "sztk/sparse_poly.hpp"

namespace sztk {

/// F_L(z) = (z^{eta_1}, ..., z^{eta_l}). Throws ValidationError on a zero
/// coordinate.
ComplexPoint apply(const LatticeMap& map, std::span<const std::complex<double>> z);

/// F_L^* p: the coefficient of w^beta moves to z^{L(beta)}. The result is
/// tagged with `target` when given. Throws ValidationError if some L(beta)
/// has a negative entry.
SparsePolynomial pullback_poly(const LatticeMap& map, const SparsePolynomial& p,
                               std::shared_ptr<const ConvexBody> target = nullptr);

/// Discrete infimum of q over fibers: images agreeing within 1e-9 relative
/// per coordinate are merged, keeping the smallest weight. Certification
/// points are pushed forward the same way.
WeightedSampleSet pushforward_weight(const LatticeMap& map, const WeightedSampleSet& samples);

/// Some z with F_L(z) = w: principal logarithms b = log w, minimal-norm c
/// with A c = b (A has rows eta_1..eta_l), z = exp(c).
ComplexPoint solve_preimage(const LatticeMap& map, std::span<const std::complex<double>> w);

/// Point of the fiber through z with coordinates z_j * prod_{i>l} t_i^{B(i,j)}.
ComplexPoint fiber_point(const LatticeMap& map, std::span<const std::complex<double>> z,
                         std::span<const std::complex<double>> t_tail);

} // namespace sztk
