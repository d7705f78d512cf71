#pragma once

// Numerical Siciak extremal function of a body S on a sampled compact set:
//
//   Phi_m(z) = sup { |p(z)|^{1/m} : p supported in mS, |p| e^{-m q} <= 1 on K }
//
// evaluated as a linear program over the coefficients of p.

#include "sztk/convex_body.hpp"
#include "sztk/lattice_map.hpp"
#include "sztk/lp.hpp"
#include "sztk/sample_set.hpp"
#include "sztk/sparse_poly.hpp"

#include <map>
#include <memory>
#include <optional>

namespace sztk {

inline constexpr unsigned kDefaultFacets = 64;

struct ExtremalResult {
    ComplexPoint z;
    unsigned m = 0;
    LpStatus status = LpStatus::infeasible;
    /// (1/m) log of the LP optimum; +inf when unbounded.
    double log_phi_raw = 0.0;
    /// (1/m) log |p(z)| after dividing p by its weighted sup-norm on the
    /// certification points. A true lower bound for the sampled problem.
    double log_phi_certified = 0.0;
    /// LP optimizer before rescaling; empty unless status is optimal.
    std::optional<SparsePolynomial> optimizer;
    double certification_norm = 0.0;
    std::size_t basis_size = 0;
};

/// Evaluates Phi_m for one body and sample set, caching the exponent sets
/// per degree.
class SiciakEvaluator {
public:
    /// facets must be even and >= 8.
    SiciakEvaluator(std::shared_ptr<const ConvexBody> body, std::shared_ptr<const WeightedSampleSet> samples,
                    unsigned facets = kDefaultFacets);

    ExtremalResult evaluate(unsigned m, std::span<const std::complex<double>> z);

    const LatticePointSet& exponents(unsigned m);
    const ConvexBody& body() const { return *body_; }

private:
    std::shared_ptr<const ConvexBody> body_;
    std::shared_ptr<const WeightedSampleSet> samples_;
    unsigned facets_;
    std::map<unsigned, LatticePointSet> exponents_;
};

ExtremalResult siciak_m(const ConvexBody& body, const WeightedSampleSet& samples, unsigned m,
                        std::span<const std::complex<double>> z, unsigned facets = kDefaultFacets);

struct LimsupResult {
    std::vector<ExtremalResult> per_degree;
    /// Running maximum of log_phi_certified over the degrees so far.
    std::vector<double> running_max;
    double estimate() const { return running_max.empty() ? 0.0 : running_max.back(); }
};

/// m_list must be non-empty and strictly ascending.
LimsupResult siciak_limsup(const ConvexBody& body, const WeightedSampleSet& samples, const std::vector<unsigned>& m_list,
                           std::span<const std::complex<double>> z, unsigned facets = kDefaultFacets);

enum class OracleKind { torus_unweighted, circle_sigma_constant };

const char* to_string(OracleKind kind);

/// Closed-form Siciak-Zakharyuta function for the registry cases:
///   torus_unweighted: K = unit torus, q = 0, |z_j| >= 1: H_S(z).
///   circle_sigma_constant: n = 1, S = [0, sigma], K = unit circle,
///   q = c: sigma log+|z| + c.
double oracle_V(OracleKind kind, const ConvexBody& body, std::span<const std::complex<double>> z,
                double weight_constant = 0.0);

struct CompareRow {
    ComplexPoint z;
    unsigned m = 0;
    LpStatus status = LpStatus::infeasible;
    double log_phi_raw = 0.0;
    double log_phi_certified = 0.0;
    double running_max = 0.0;
    double oracle = 0.0;
    /// oracle - running_max.
    double error = 0.0;
};

struct CompareReport {
    std::vector<CompareRow> rows;
    /// Over grid points, at the last degree.
    double max_abs_error = 0.0;
    double min_error = 0.0;
    double max_error = 0.0;
    /// error >= -2 (LP tolerance + slack) on every row.
    bool one_sided_ok = true;
    /// Per grid point: the error never increased along m_list.
    std::vector<bool> error_non_increasing;
};

struct CompareOptions {
    unsigned facets = kDefaultFacets;
    double discretization_slack = 0.03;
};

/// Weights of `samples` must all equal one finite constant.
CompareReport compare(const ConvexBody& body, OracleKind kind, const WeightedSampleSet& samples,
                      const std::vector<unsigned>& m_list, const std::vector<ComplexPoint>& grid,
                      const CompareOptions& options = {});

struct Thm12Row {
    ComplexPoint z;
    ComplexPoint image;
    unsigned m = 0;
    double log_phi_s = 0.0;
    double log_phi_t = 0.0;
    double certified_s = 0.0;
    double certified_t = 0.0;
    double difference = 0.0;
    double certified_difference = 0.0;
};

struct Thm12Report {
    LatticeMap map;
    ConvexBody preimage;
    std::vector<Thm12Row> rows;
    double max_difference = 0.0;
    double max_certified_difference = 0.0;
};

/// Compares log Phi^S_m(z) with log Phi^T_m(F_L(z)), T = L^{-1}(S), weights
/// pushed forward along F_L. Requires S rationally dense with dim S < n.
Thm12Report thm12_check(const ConvexBody& body, const WeightedSampleSet& samples, const std::vector<unsigned>& m_list,
                        const std::vector<ComplexPoint>& grid, unsigned facets = kDefaultFacets);

} // namespace sztk
