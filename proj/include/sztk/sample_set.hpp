#pragma once

#include "sztk/convex_body.hpp"

#include <complex>
#include <limits>
#include <vector>

namespace sztk {

enum class SampleKind { torus, circle, explicit_list };

/// Finite discretization of a compact K ⊂ C^{*n} with weight values q.
///
/// Weights may be +inf; such points impose no constraint. Certification
/// points are a denser resampling of the same descriptor (or the samples
/// themselves for explicit sets) and carry their own weights.
class WeightedSampleSet {
public:
    /// Throws ValidationError on zero coordinates, length mismatches, or
    /// when every weight is +inf.
    WeightedSampleSet(SampleKind kind, std::size_t n, std::vector<ComplexPoint> points, std::vector<double> weights,
                      std::vector<ComplexPoint> certification_points, std::vector<double> certification_weights);

    SampleKind kind() const { return kind_; }
    std::size_t dimension() const { return n_; }
    const std::vector<ComplexPoint>& points() const { return points_; }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<ComplexPoint>& certification_points() const { return cert_points_; }
    const std::vector<double>& certification_weights() const { return cert_weights_; }

    /// Same points, every weight shifted by c.
    WeightedSampleSet shifted(double c) const;

private:
    SampleKind kind_;
    std::size_t n_;
    std::vector<ComplexPoint> points_;
    std::vector<double> weights_;
    std::vector<ComplexPoint> cert_points_;
    std::vector<double> cert_weights_;
};

inline constexpr double kInfiniteWeight = std::numeric_limits<double>::infinity();

/// per_axis^n points radius * e^{2 pi i k/per_axis} per coordinate, constant
/// weight; certification grid is 4 times denser along every axis.
WeightedSampleSet torus_samples(std::size_t n, std::size_t per_axis, double radius, double weight);

/// count points on |z| = radius; certification uses 4 * count points.
WeightedSampleSet circle_samples(std::size_t count, double radius, double weight);

/// Explicit list; certification points are the samples themselves.
WeightedSampleSet explicit_samples(std::vector<ComplexPoint> points, std::vector<double> weights);

} // namespace sztk
