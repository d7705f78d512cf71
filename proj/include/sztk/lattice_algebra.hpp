#pragma once

// Integer normal forms and the construction of the lattice map L with
// L(R^l) = W, L(Z^l) = W ∩ Z^n and L^{-1}(R^n_+) ⊆ R^l_+.

#include "sztk/convex_body.hpp"
#include "sztk/exact_field.hpp"
#include "sztk/lattice_map.hpp"

#include <vector>

namespace sztk {

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ..., d_i >= 0,
/// zero entries trailing.
struct SnfResult {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;

    std::vector<Integer> diagonal() const;
};

SnfResult smith_normal_form(const IntMatrix& a);

Integer determinant(const IntMatrix& a);

/// Column Hermite form of the lattice spanned by the columns: lower
/// echelon, positive pivots, entries left of a pivot reduced into [0, pivot).
/// Same lattice in, same matrix out.
IntMatrix hermite_column_basis(const IntMatrix& columns);

/// Integer basis (as columns) of W ∩ Z^n for W spanned by the given rational
/// columns. Throws ValidationError on nonzero surd parts or dependent
/// generators.
IntMatrix saturate(const ExactMatrix& generators);

struct ReductionTrace {
    /// Output vectors xi_1..xi_l with |det| = 1.
    std::vector<std::vector<Integer>> vectors;
    /// |det| of the working basis before each replacement, then the final one.
    std::vector<Integer> determinants;
};

/// Integer points of the half-open parallelepiped spanned by the columns,
/// lexicographically sorted.
std::vector<std::vector<Integer>> parallelepiped_points(const std::vector<std::vector<Integer>>& generators);

/// Replaces generators by interior lattice points of their half-open
/// parallelepiped until it contains no nonzero lattice point. Throws
/// ValidationError on dependent inputs.
ReductionTrace parallelepiped_reduce(const std::vector<std::vector<Integer>>& generators);

/// Builds L and the kernel rows for a rationally dense body S with
/// dim S >= 1. Throws ValidationError when S is not rationally dense and
/// NumericalError if the result fails verify_map.
LatticeMap construct_L(const ConvexBody& body);

struct MapCertificate {
    bool integer_entries = false;
    bool generates_saturated_lattice = false;
    bool unimodular_smith_form = false;
    bool preimage_nonnegative = false;

    bool all() const {
        return integer_entries && generates_saturated_lattice && unimodular_smith_form && preimage_nonnegative;
    }
};

MapCertificate verify_map(const RatMatrix& map, const ConvexBody& body);
MapCertificate verify_map(const LatticeMap& map, const ConvexBody& body);

} // namespace sztk
