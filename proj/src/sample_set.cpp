#include "sztk/sample_set.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sztk {

namespace {

void check_points(std::size_t n, const std::vector<ComplexPoint>& points, const std::vector<double>& weights) {
    if (points.size() != weights.size()) throw ValidationError("sample and weight counts differ");
    for (const auto& p : points) {
        if (p.size() != n) throw ValidationError("sample point has the wrong dimension");
        for (const auto& c : p)
            if (c == std::complex<double>(0.0, 0.0)) throw ValidationError("sample point has a zero coordinate");
    }
    for (double w : weights)
        if (std::isnan(w) || w == -kInfiniteWeight) throw ValidationError("weights must be real or +inf");
}

std::vector<ComplexPoint> torus_grid(std::size_t n, std::size_t per_axis, double radius) {
    std::vector<std::complex<double>> axis;
    axis.reserve(per_axis);
    for (std::size_t k = 0; k < per_axis; ++k)
        axis.push_back(std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(per_axis)));
    std::vector<ComplexPoint> out;
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
        ComplexPoint p;
        p.reserve(n);
        for (auto i : idx) p.push_back(axis[i]);
        out.push_back(std::move(p));
        std::size_t j = n;
        while (j > 0) {
            --j;
            if (++idx[j] < per_axis) break;
            idx[j] = 0;
            if (j == 0) return out;
        }
    }
}

} // namespace

WeightedSampleSet::WeightedSampleSet(SampleKind kind, std::size_t n, std::vector<ComplexPoint> points,
                                     std::vector<double> weights, std::vector<ComplexPoint> certification_points,
                                     std::vector<double> certification_weights)
    : kind_(kind), n_(n), points_(std::move(points)), weights_(std::move(weights)),
      cert_points_(std::move(certification_points)), cert_weights_(std::move(certification_weights)) {
    if (n_ == 0) throw ValidationError("sample dimension must be positive");
    check_points(n_, points_, weights_);
    check_points(n_, cert_points_, cert_weights_);
    if (std::all_of(weights_.begin(), weights_.end(), [](double w) { return w == kInfiniteWeight; }))
        throw ValidationError("every sample weight is +inf");
}

WeightedSampleSet WeightedSampleSet::shifted(double c) const {
    auto w = weights_;
    auto cw = cert_weights_;
    for (auto& x : w) x += c;
    for (auto& x : cw) x += c;
    return WeightedSampleSet(kind_, n_, points_, std::move(w), cert_points_, std::move(cw));
}

WeightedSampleSet torus_samples(std::size_t n, std::size_t per_axis, double radius, double weight) {
    if (per_axis == 0 || !(radius > 0.0)) throw ValidationError("torus needs a positive count and radius");
    auto pts = torus_grid(n, per_axis, radius);
    auto cert = torus_grid(n, 4 * per_axis, radius);
    std::vector<double> w(pts.size(), weight);
    std::vector<double> cw(cert.size(), weight);
    return WeightedSampleSet(SampleKind::torus, n, std::move(pts), std::move(w), std::move(cert), std::move(cw));
}

WeightedSampleSet circle_samples(std::size_t count, double radius, double weight) {
    if (count == 0 || !(radius > 0.0)) throw ValidationError("circle needs a positive count and radius");
    auto pts = torus_grid(1, count, radius);
    auto cert = torus_grid(1, 4 * count, radius);
    std::vector<double> w(pts.size(), weight);
    std::vector<double> cw(cert.size(), weight);
    return WeightedSampleSet(SampleKind::circle, 1, std::move(pts), std::move(w), std::move(cert), std::move(cw));
}

WeightedSampleSet explicit_samples(std::vector<ComplexPoint> points, std::vector<double> weights) {
    if (points.empty()) throw ValidationError("explicit sample set is empty");
    const std::size_t n = points.front().size();
    auto cert = points;
    auto cw = weights;
    return WeightedSampleSet(SampleKind::explicit_list, n, std::move(points), std::move(weights), std::move(cert),
                             std::move(cw));
}

} // namespace sztk
