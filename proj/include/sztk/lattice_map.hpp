#pragma once

#include "sztk/exact_field.hpp"

#include <cstdint>
#include <vector>

namespace sztk {

/// Integer data of a monomial map F_L(z) = (z^{eta_1}, ..., z^{eta_l}).
///
/// eta_k = L(e_k) are the columns of the n x l matrix L; the kernel rows
/// eta_{l+1}..eta_n form an integer basis of W-perp. B stacks all n of them
/// as rows and is used to parametrize fibers.
class LatticeMap {
public:
    /// Throws ValidationError if det B = 0, if some eta_k is not orthogonal
    /// to every kernel row, or if the Smith form of L is not all +-1.
    LatticeMap(IntMatrix l_columns, IntMatrix kernel_rows);

    std::size_t ambient_dimension() const { return n_; }
    std::size_t image_dimension() const { return ell_; }

    /// L as an n x l integer matrix.
    const IntMatrix& matrix() const { return l_; }
    RatMatrix rational_matrix() const;
    /// (n - l) x n.
    const IntMatrix& kernel_rows() const { return kernel_; }
    /// n x n with rows eta_1 .. eta_n.
    const IntMatrix& basis_matrix() const { return b_; }

    /// B(k, j) as a machine integer; rows k < l are the exponent vectors of F_L.
    std::int64_t exponent(std::size_t k, std::size_t j) const { return exponents_[k * n_ + j]; }

private:
    std::size_t n_;
    std::size_t ell_;
    IntMatrix l_;
    IntMatrix kernel_;
    IntMatrix b_;
    std::vector<std::int64_t> exponents_;
};

} // namespace sztk
