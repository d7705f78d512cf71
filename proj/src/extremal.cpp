#include "sztk/extremal.hpp"

#include "sztk/lattice_algebra.hpp"
#include "sztk/monomial_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace sztk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLpTolerance = 1e-9;

double constant_weight(const WeightedSampleSet& samples) {
    const auto& w = samples.weights();
    const double c = w.front();
    if (!std::isfinite(c) || std::any_of(w.begin(), w.end(), [c](double x) { return x != c; }))
        throw ValidationError("oracle comparison needs a finite constant weight");
    return c;
}

double difference_of(LpStatus sa, double a, LpStatus sb, double b) {
    if (sa != sb) return kInf;
    if (sa != LpStatus::optimal) return 0.0;
    return std::abs(a - b);
}

} // namespace

SiciakEvaluator::SiciakEvaluator(std::shared_ptr<const ConvexBody> body, std::shared_ptr<const WeightedSampleSet> samples,
                                 unsigned facets)
    : body_(std::move(body)), samples_(std::move(samples)), facets_(facets) {
    if (!body_ || !samples_) throw ValidationError("evaluator needs a body and a sample set");
    if (facets_ < 8 || facets_ % 2 != 0) throw ValidationError("facet count must be even and >= 8");
    if (body_->dimension() != samples_->dimension()) throw ValidationError("body and sample dimensions differ");
}

const LatticePointSet& SiciakEvaluator::exponents(unsigned m) {
    auto it = exponents_.find(m);
    if (it == exponents_.end()) it = exponents_.emplace(m, lattice_points(*body_, m)).first;
    return it->second;
}

ExtremalResult SiciakEvaluator::evaluate(unsigned m, std::span<const std::complex<double>> z) {
    if (m == 0) throw ValidationError("degree m must be >= 1");
    if (z.size() != body_->dimension()) throw ValidationError("query point has the wrong dimension");
    const auto& alphas = exponents(m).points;
    const std::size_t terms = alphas.size();

    ExtremalResult out;
    out.z.assign(z.begin(), z.end());
    out.m = m;
    out.basis_size = terms;

    // Variables: (Re a_k, Im a_k). Primal: maximize Re p(z) subject to
    // Re(e^{-i theta_j} p(w)) <= e^{m q(w)} for every finite-weight sample w
    // and facet angle theta_j. Solved through its dual, whose tableau has
    // one row per variable instead of one per constraint.
    std::vector<double> objective(2 * terms);
    for (std::size_t k = 0; k < terms; ++k) {
        const auto v = monomial(z, alphas[k]);
        objective[2 * k] = v.real();
        objective[2 * k + 1] = -v.imag();
    }

    std::vector<std::complex<double>> rotations(facets_);
    for (unsigned j = 0; j < facets_; ++j)
        rotations[j] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(facets_));

    const auto& pts = samples_->points();
    const auto& wts = samples_->weights();
    std::vector<std::size_t> active;
    for (std::size_t s = 0; s < pts.size(); ++s)
        if (wts[s] != kInfiniteWeight) active.push_back(s);

    StandardFormLp dual;
    dual.rows = 2 * terms;
    dual.cols = active.size() * facets_;
    dual.matrix.assign(dual.rows * dual.cols, 0.0);
    dual.cost.assign(dual.cols, 0.0);
    std::vector<double> bounds(dual.cols);
    std::vector<std::complex<double>> values(terms);
    for (std::size_t a = 0; a < active.size(); ++a) {
        const std::size_t s = active[a];
        for (std::size_t k = 0; k < terms; ++k) values[k] = monomial(pts[s], alphas[k]);
        const double h = std::exp(static_cast<double>(m) * wts[s]);
        for (unsigned j = 0; j < facets_; ++j) {
            const std::size_t col = a * facets_ + j;
            bounds[col] = h;
            for (std::size_t k = 0; k < terms; ++k) {
                const auto u = rotations[j] * values[k];
                dual.matrix[(2 * k) * dual.cols + col] = u.real();
                dual.matrix[(2 * k + 1) * dual.cols + col] = -u.imag();
            }
        }
    }

    // Scale objective and bounds to unit size; undone on the way out.
    double c_scale = 0.0;
    for (double v : objective) c_scale = std::max(c_scale, std::abs(v));
    double h_scale = 0.0;
    for (double v : bounds) h_scale = std::max(h_scale, v);
    if (c_scale == 0.0) c_scale = 1.0;
    if (h_scale == 0.0) h_scale = 1.0;
    dual.rhs.resize(dual.rows);
    for (std::size_t r = 0; r < dual.rows; ++r) dual.rhs[r] = objective[r] / c_scale;
    for (std::size_t c = 0; c < dual.cols; ++c) dual.cost[c] = bounds[c] / h_scale;

    const auto sol = solve_standard_form(dual);
    if (sol.status == LpStatus::infeasible) {
        out.status = LpStatus::unbounded;
        out.log_phi_raw = kInf;
        out.log_phi_certified = kInf;
        return out;
    }
    if (sol.status != LpStatus::optimal) {
        out.status = LpStatus::infeasible;
        out.log_phi_raw = std::numeric_limits<double>::quiet_NaN();
        out.log_phi_certified = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    out.status = LpStatus::optimal;

    const double value = sol.value * c_scale * h_scale;
    if (!(value > 0.0)) throw NumericalError("Siciak LP optimum is not positive");
    out.log_phi_raw = std::log(value) / static_cast<double>(m);

    SparsePolynomial::Terms coeffs;
    for (std::size_t k = 0; k < terms; ++k)
        coeffs.emplace(alphas[k], std::complex<double>(sol.multipliers[2 * k] * h_scale, sol.multipliers[2 * k + 1] * h_scale));
    SparsePolynomial p(body_->dimension(), m, std::move(coeffs), body_);

    const double norm = weighted_sup_norm(p, samples_->certification_points(), samples_->certification_weights(), m);
    if (!(norm > 0.0)) throw NumericalError("optimizer vanishes on the certification points");
    out.certification_norm = norm;
    out.log_phi_certified = (std::log(std::abs(sztk::evaluate(p, z))) - std::log(norm)) / static_cast<double>(m);
    out.optimizer.emplace(std::move(p));
    return out;
}

ExtremalResult siciak_m(const ConvexBody& body, const WeightedSampleSet& samples, unsigned m,
                        std::span<const std::complex<double>> z, unsigned facets) {
    SiciakEvaluator eval(std::make_shared<const ConvexBody>(body), std::make_shared<const WeightedSampleSet>(samples),
                         facets);
    return eval.evaluate(m, z);
}

namespace {

LimsupResult limsup_with(SiciakEvaluator& eval, const std::vector<unsigned>& m_list,
                         std::span<const std::complex<double>> z) {
    if (m_list.empty()) throw ValidationError("m list is empty");
    for (std::size_t i = 1; i < m_list.size(); ++i)
        if (m_list[i] <= m_list[i - 1]) throw ValidationError("m list must be strictly ascending");
    LimsupResult out;
    double best = -kInf;
    for (unsigned m : m_list) {
        auto r = eval.evaluate(m, z);
        if (r.status == LpStatus::infeasible) throw NumericalError("Siciak LP reported infeasible");
        best = std::max(best, r.log_phi_certified);
        out.running_max.push_back(best);
        out.per_degree.push_back(std::move(r));
    }
    return out;
}

} // namespace

LimsupResult siciak_limsup(const ConvexBody& body, const WeightedSampleSet& samples, const std::vector<unsigned>& m_list,
                           std::span<const std::complex<double>> z, unsigned facets) {
    SiciakEvaluator eval(std::make_shared<const ConvexBody>(body), std::make_shared<const WeightedSampleSet>(samples),
                         facets);
    return limsup_with(eval, m_list, z);
}

const char* to_string(OracleKind kind) {
    switch (kind) {
    case OracleKind::torus_unweighted: return "torus";
    case OracleKind::circle_sigma_constant: return "circle";
    }
    return "unknown";
}

double oracle_V(OracleKind kind, const ConvexBody& body, std::span<const std::complex<double>> z,
                double weight_constant) {
    if (z.size() != body.dimension()) throw ValidationError("oracle point has the wrong dimension");
    switch (kind) {
    case OracleKind::torus_unweighted:
        if (weight_constant != 0.0) throw ValidationError("torus oracle is only valid for q = 0");
        for (const auto& c : z)
            if (std::abs(c) < 1.0) throw ValidationError("torus oracle needs |z_j| >= 1");
        return log_support(body, z);
    case OracleKind::circle_sigma_constant: {
        if (body.dimension() != 1) throw ValidationError("circle oracle needs n = 1");
        double sigma = 0.0;
        for (const auto& v : body.vertices_double()) sigma = std::max(sigma, v[0]);
        return sigma * std::max(0.0, std::log(std::abs(z[0]))) + weight_constant;
    }
    }
    throw ValidationError("unknown oracle case");
}

CompareReport compare(const ConvexBody& body, OracleKind kind, const WeightedSampleSet& samples,
                      const std::vector<unsigned>& m_list, const std::vector<ComplexPoint>& grid,
                      const CompareOptions& options) {
    const double c = constant_weight(samples);
    SiciakEvaluator eval(std::make_shared<const ConvexBody>(body), std::make_shared<const WeightedSampleSet>(samples),
                         options.facets);
    CompareReport report;
    const double floor_error = -2.0 * (kLpTolerance + options.discretization_slack);
    report.min_error = kInf;
    report.max_error = -kInf;
    for (const auto& z : grid) {
        const double v = oracle_V(kind, body, z, c);
        const auto limsup = limsup_with(eval, m_list, z);
        bool non_increasing = true;
        double previous = kInf;
        for (std::size_t i = 0; i < m_list.size(); ++i) {
            const auto& r = limsup.per_degree[i];
            CompareRow row;
            row.z = z;
            row.m = r.m;
            row.status = r.status;
            row.log_phi_raw = r.log_phi_raw;
            row.log_phi_certified = r.log_phi_certified;
            row.running_max = limsup.running_max[i];
            row.oracle = v;
            row.error = v - row.running_max;
            report.one_sided_ok = report.one_sided_ok && row.error >= floor_error;
            non_increasing = non_increasing && row.error <= previous + 1e-12;
            previous = row.error;
            report.rows.push_back(std::move(row));
        }
        const double last = report.rows.back().error;
        report.max_abs_error = std::max(report.max_abs_error, std::abs(last));
        report.min_error = std::min(report.min_error, last);
        report.max_error = std::max(report.max_error, last);
        report.error_non_increasing.push_back(non_increasing);
    }
    return report;
}

Thm12Report thm12_check(const ConvexBody& body, const WeightedSampleSet& samples, const std::vector<unsigned>& m_list,
                        const std::vector<ComplexPoint>& grid, unsigned facets) {
    if (body.affine_dimension() >= body.dimension())
        throw ValidationError("pullback check needs a body of lower dimension than n");
    LatticeMap map = construct_L(body);
    ConvexBody t = preimage_body(body, map);
    const auto pushed = pushforward_weight(map, samples);

    SiciakEvaluator eval_s(std::make_shared<const ConvexBody>(body), std::make_shared<const WeightedSampleSet>(samples),
                           facets);
    SiciakEvaluator eval_t(std::make_shared<const ConvexBody>(t), std::make_shared<const WeightedSampleSet>(pushed),
                           facets);
    Thm12Report report{std::move(map), std::move(t), {}, 0.0, 0.0};
    for (const auto& z : grid) {
        const ComplexPoint image = sztk::apply(report.map, z);
        for (unsigned m : m_list) {
            const auto rs = eval_s.evaluate(m, z);
            const auto rt = eval_t.evaluate(m, image);
            Thm12Row row;
            row.z = z;
            row.image = image;
            row.m = m;
            row.log_phi_s = rs.log_phi_raw;
            row.log_phi_t = rt.log_phi_raw;
            row.certified_s = rs.log_phi_certified;
            row.certified_t = rt.log_phi_certified;
            row.difference = difference_of(rs.status, rs.log_phi_raw, rt.status, rt.log_phi_raw);
            row.certified_difference = difference_of(rs.status, rs.log_phi_certified, rt.status, rt.log_phi_certified);
            report.max_difference = std::max(report.max_difference, row.difference);
            report.max_certified_difference = std::max(report.max_certified_difference, row.certified_difference);
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

} // namespace sztk
