// Command-line front end. Exit status 0 on success, 2 on invalid input,
// 3 on numerical failure; errors go to stderr as one JSON object.

#include "sztk/convex_body.hpp"
#include "sztk/error.hpp"
#include "sztk/extremal.hpp"
#include "sztk/io.hpp"
#include "sztk/lattice_algebra.hpp"
#include "sztk/monomial_map.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

using namespace sztk;

namespace {

constexpr double kFiberTolerance = 1e-9;
constexpr double kPullbackTolerance = 1e-7;

struct Options {
    std::string spec;
    std::string set;
    std::string matrix;
    std::string points;
    std::string grid;
    std::string out;
    std::string xi;
    std::string z;
    std::string w;
    std::string oracle;
    std::string m_list;
    unsigned m = 1;
    unsigned facets = kDefaultFacets;
    unsigned samples = 100;
    std::uint64_t seed = 1;
};

std::string show(const std::vector<Integer>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
    return s + "]";
}

void print_matrix(std::ostream& os, const std::string& name, const IntMatrix& m) {
    os << name << " =\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<Integer> row(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m(i, j);
        os << "  " << show(row) << '\n';
    }
}

std::string show_point(const ExactPoint& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + to_string(p[i]);
    return s + ")";
}

std::string show_rational(const std::vector<Rational>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s + ")";
}

ConvexBody load_body(const std::string& path) { return io::body_from_json(io::read_json(path)); }

void check_degrees(const std::vector<unsigned>& ms, unsigned facets) {
    if (facets < 8 || facets % 2 != 0) throw ValidationError("--facets must be even and >= 8");
    for (unsigned m : ms)
        if (m < 1) throw ValidationError("degrees must be >= 1");
}

std::vector<unsigned> ascending(const std::string& text) {
    auto ms = io::parse_unsigned_list(text);
    for (std::size_t i = 1; i < ms.size(); ++i)
        if (ms[i] <= ms[i - 1]) throw ValidationError("--m-list must be strictly ascending");
    return ms;
}

// Writes CSV to --out when given, else to stdout ahead of the summary.
void emit_csv(const Options& o, std::size_t n, const std::vector<io::ResultRow>& rows) {
    if (o.out.empty()) {
        io::write_results_csv(std::cout, n, rows);
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ValidationError("cannot write '" + o.out + "'");
    io::write_results_csv(f, n, rows);
}

int body_show(const Options& o) {
    const auto body = load_body(o.spec);
    const auto verdict = is_rationally_dense(body);
    std::cout << "n = " << body.dimension() << "\nradicand = " << body.radicand()
              << "\nl = " << body.affine_dimension() << "\nvertices:\n";
    for (const auto& v : body.vertices()) std::cout << "  " << show_point(v) << '\n';
    std::cout << "dense = " << (verdict.dense ? "true" : "false") << '\n';
    if (verdict.dense) {
        std::cout << "rational span:\n";
        for (const auto& v : verdict.rational_span) std::cout << "  " << show_rational(v) << '\n';
    } else {
        std::cout << "separating constraint: c = " << show_rational(verdict.separating_constraint[0])
                  << ", e = " << show_rational(verdict.separating_constraint[1]) << '\n';
    }
    std::cout << "summary: n=" << body.dimension() << " l=" << body.affine_dimension()
              << " dense=" << (verdict.dense ? "true" : "false") << " rational_dim=" << verdict.rational_dimension
              << '\n';
    return 0;
}

int body_support(const Options& o) {
    const auto body = load_body(o.spec);
    const auto xi = io::parse_double_list(o.xi);
    if (xi.size() != body.dimension()) throw ValidationError("--xi has the wrong dimension");
    for (double v : xi)
        if (!std::isfinite(v)) throw ValidationError("--xi must be finite");
    std::cout << io::format_double(support_value(body, xi)) << '\n';
    return 0;
}

void print_certificate(const MapCertificate& c) {
    auto yes = [](bool b) { return b ? "pass" : "FAIL"; };
    std::cout << "certificate:\n"
              << "  integer entries            " << yes(c.integer_entries) << '\n'
              << "  generates W cap Z^n        " << yes(c.generates_saturated_lattice) << '\n'
              << "  unimodular Smith form      " << yes(c.unimodular_smith_form) << '\n'
              << "  preimage in positive cone  " << yes(c.preimage_nonnegative) << '\n';
}

int lattice_map(const Options& o) {
    const auto body = load_body(o.spec);
    const auto map = construct_L(body);
    const auto cert = verify_map(map, body);
    print_matrix(std::cout, "L", map.matrix());
    if (map.kernel_rows().rows() > 0) print_matrix(std::cout, "kernel rows", map.kernel_rows());
    std::cout << "smith diagonal = " << show(smith_normal_form(map.matrix()).diagonal()) << '\n';
    print_certificate(cert);
    std::cout << "summary: n=" << map.ambient_dimension() << " l=" << map.image_dimension()
              << " certificate=" << (cert.all() ? "pass" : "fail") << '\n';
    return cert.all() ? 0 : 3;
}

int lattice_snf(const Options& o) {
    const auto a = io::int_matrix_from_json(io::read_json(o.matrix));
    const auto snf = smith_normal_form(a);
    print_matrix(std::cout, "U", snf.U);
    print_matrix(std::cout, "D", snf.D);
    print_matrix(std::cout, "V", snf.V);
    const bool ok = snf.U * a * snf.V == snf.D;
    std::cout << "summary: diagonal=" << show(snf.diagonal()) << " reconstruction=" << (ok ? "exact" : "FAILED")
              << '\n';
    return ok ? 0 : 3;
}

int map_apply(const Options& o) {
    const auto map = construct_L(load_body(o.spec));
    const auto z = io::parse_complex_list(o.z);
    std::cout << io::format_point(sztk::apply(map, z)) << '\n';
    return 0;
}

int map_preimage(const Options& o) {
    const auto map = construct_L(load_body(o.spec));
    const auto w = io::parse_complex_list(o.w);
    const auto z = solve_preimage(map, w);
    const auto back = sztk::apply(map, z);
    double dev = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) dev = std::max(dev, std::abs(back[k] - w[k]) / std::abs(w[k]));
    std::cout << io::format_point(z) << '\n'
              << "summary: round-trip relative deviation=" << io::format_double(dev) << '\n';
    return 0;
}

int fibers_check(const Options& o) {
    const auto body = load_body(o.spec);
    const auto map = construct_L(body);
    const auto z = io::parse_complex_list(o.z);
    const auto w = sztk::apply(map, z);
    const std::size_t tail = map.ambient_dimension() - map.image_dimension();
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> lm(-2.0, 2.0);
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    double worst = 0.0;
    for (unsigned s = 0; s < o.samples && tail > 0; ++s) {
        ComplexPoint t(tail);
        for (auto& c : t) c = std::polar(std::exp(lm(rng)), ang(rng));
        const auto image = sztk::apply(map, fiber_point(map, z, t));
        for (std::size_t k = 0; k < w.size(); ++k)
            worst = std::max(worst, std::abs(image[k] - w[k]) / std::max(std::abs(image[k]), std::abs(w[k])));
    }
    const bool ok = worst <= kFiberTolerance;
    std::cout << "summary: fibers=" << (tail > 0 ? o.samples : 0U) << " max relative deviation="
              << io::format_double(worst) << " verdict=" << (ok ? "pass" : "fail") << '\n';
    return ok ? 0 : 3;
}

std::vector<ComplexPoint> load_points(const std::string& points, const std::string& z) {
    if (!points.empty()) return io::points_from_json(io::read_json(points));
    if (!z.empty()) return {io::parse_complex_list(z)};
    throw ValidationError("give query points with --points or --z");
}

int siciak_eval(const Options& o) {
    check_degrees({o.m}, o.facets);
    auto body = std::make_shared<const ConvexBody>(load_body(o.spec));
    auto samples = std::make_shared<const WeightedSampleSet>(io::samples_from_json(io::read_json(o.set)));
    const auto pts = load_points(o.points, o.z);
    SiciakEvaluator eval(body, samples, o.facets);
    std::vector<io::ResultRow> rows;
    std::size_t unbounded = 0;
    double best = -INFINITY;
    for (const auto& z : pts) {
        const auto r = eval.evaluate(o.m, z);
        if (r.status == LpStatus::infeasible) throw NumericalError("Siciak LP reported infeasible");
        if (r.status == LpStatus::unbounded) ++unbounded;
        best = std::max(best, r.log_phi_certified);
        rows.push_back({r.z, r.m, r.log_phi_raw, r.log_phi_certified, std::nullopt, std::nullopt});
    }
    emit_csv(o, body->dimension(), rows);
    std::cout << "summary: points=" << pts.size() << " m=" << o.m << " basis=" << eval.exponents(o.m).points.size()
              << " unbounded=" << unbounded << " max_certified=" << io::format_double(best) << '\n';
    return 0;
}

WeightedSampleSet default_samples(OracleKind kind, std::size_t n) {
    if (kind == OracleKind::circle_sigma_constant) return circle_samples(256, 1.0, 0.0);
    return torus_samples(n, 32, 1.0, 0.0);
}

int compare_cmd(const Options& o) {
    OracleKind kind;
    if (o.oracle == "torus")
        kind = OracleKind::torus_unweighted;
    else if (o.oracle == "circle")
        kind = OracleKind::circle_sigma_constant;
    else
        throw ValidationError("--oracle must be torus or circle");
    const auto ms = ascending(o.m_list);
    check_degrees(ms, o.facets);
    const auto body = load_body(o.spec);
    const auto samples = o.set.empty() ? default_samples(kind, body.dimension())
                                       : io::samples_from_json(io::read_json(o.set));
    const auto grid = io::points_from_json(io::read_json(o.grid));
    CompareOptions opts;
    opts.facets = o.facets;
    const auto report = compare(body, kind, samples, ms, grid, opts);
    std::vector<io::ResultRow> rows;
    for (const auto& r : report.rows) rows.push_back({r.z, r.m, r.log_phi_raw, r.log_phi_certified, r.oracle, r.error});
    emit_csv(o, body.dimension(), rows);
    const bool trend = std::all_of(report.error_non_increasing.begin(), report.error_non_increasing.end(),
                                   [](bool b) { return b; });
    std::cout << "summary: oracle=" << to_string(kind) << " max_abs_err=" << io::format_double(report.max_abs_error)
              << " min_err=" << io::format_double(report.min_error)
              << " max_err=" << io::format_double(report.max_error)
              << " one_sided=" << (report.one_sided_ok ? "pass" : "fail")
              << " non_increasing=" << (trend ? "yes" : "no") << '\n';
    return report.one_sided_ok ? 0 : 3;
}

int thm12_cmd(const Options& o) {
    const auto ms = ascending(o.m_list);
    check_degrees(ms, o.facets);
    const auto body = load_body(o.spec);
    const auto samples = io::samples_from_json(io::read_json(o.set));
    const auto grid = io::points_from_json(io::read_json(o.grid));
    const auto report = thm12_check(body, samples, ms, grid, o.facets);
    // oracle_V carries the value on the image side; err is the difference.
    std::vector<io::ResultRow> rows;
    for (const auto& r : report.rows) rows.push_back({r.z, r.m, r.log_phi_s, r.certified_s, r.log_phi_t, r.difference});
    emit_csv(o, body.dimension(), rows);
    const bool ok = report.max_difference <= kPullbackTolerance;
    std::cout << "summary: l=" << report.map.image_dimension()
              << " max_difference=" << io::format_double(report.max_difference)
              << " max_certified_difference=" << io::format_double(report.max_certified_difference)
              << " verdict=" << (ok ? "pass" : "fail") << '\n';
    return ok ? 0 : 3;
}

int fail(int code, const char* kind, const std::string& message) {
    std::cout.flush();
    std::cerr << nlohmann::json{{"error", kind}, {"message", message}}.dump() << '\n';
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Siciak extremal functions for convex bodies and monomial maps"};
    app.require_subcommand(1);
    Options o;
    std::function<int()> action;

    auto spec_flag = [&](CLI::App* c) {
        c->add_option("--spec", o.spec, "Body JSON file")->required()->check(CLI::ExistingFile);
    };

    auto* body = app.add_subcommand("body", "Inspect a convex body");
    body->require_subcommand(1);
    auto* body_show_cmd = body->add_subcommand("show", "Dimension, vertices and rational-density verdict");
    spec_flag(body_show_cmd);
    body_show_cmd->callback([&] { action = [&] { return body_show(o); }; });
    auto* support = body->add_subcommand("support", "Support function at xi, 15 significant digits");
    spec_flag(support);
    support->add_option("--xi", o.xi, "Comma-separated direction")->required();
    support->callback([&] { action = [&] { return body_support(o); }; });

    auto* lattice = app.add_subcommand("lattice", "Integer lattice tools");
    lattice->require_subcommand(1);
    auto* lmap = lattice->add_subcommand("map", "Build L, kernel rows and certificates for a body");
    spec_flag(lmap);
    lmap->callback([&] { action = [&] { return lattice_map(o); }; });
    auto* snf = lattice->add_subcommand("snf", "Smith normal form U A V = D");
    snf->add_option("--matrix", o.matrix, "Integer matrix JSON file")->required()->check(CLI::ExistingFile);
    snf->callback([&] { action = [&] { return lattice_snf(o); }; });

    auto* map = app.add_subcommand("map", "Evaluate the monomial map of a body");
    map->require_subcommand(1);
    auto* apply_cmd = map->add_subcommand("apply", "F_L(z)");
    spec_flag(apply_cmd);
    apply_cmd->add_option("--z", o.z, "Comma-separated complex point, e.g. 2,1.5+0.5i")->required();
    apply_cmd->callback([&] { action = [&] { return map_apply(o); }; });
    auto* pre = map->add_subcommand("preimage", "Some z with F_L(z) = w");
    spec_flag(pre);
    pre->add_option("--w", o.w, "Comma-separated complex image point")->required();
    pre->callback([&] { action = [&] { return map_preimage(o); }; });

    auto* fibers = app.add_subcommand("fibers", "Fiber checks");
    fibers->require_subcommand(1);
    auto* fcheck = fibers->add_subcommand("check", "Max deviation of F_L along random fiber points");
    spec_flag(fcheck);
    fcheck->add_option("--z", o.z, "Base point")->required();
    fcheck->add_option("--samples", o.samples, "Number of fiber points")->check(CLI::PositiveNumber);
    fcheck->add_option("--seed", o.seed, "Random seed");
    fcheck->callback([&] { action = [&] { return fibers_check(o); }; });

    auto* siciak = app.add_subcommand("siciak", "Discrete Siciak extremal function");
    siciak->require_subcommand(1);
    auto* eval = siciak->add_subcommand("eval", "log Phi_m at the given points");
    spec_flag(eval);
    eval->add_option("--set", o.set, "Sample-set JSON file")->required()->check(CLI::ExistingFile);
    eval->add_option("--m", o.m, "Degree, >= 1");
    eval->add_option("--facets", o.facets, "Polygon facets per modulus constraint, even and >= 8");
    eval->add_option("--points", o.points, "Query points JSON file")->check(CLI::ExistingFile);
    eval->add_option("--z", o.z, "Single query point instead of --points");
    eval->add_option("--out", o.out, "CSV output path (stdout if omitted)");
    eval->callback([&] { action = [&] { return siciak_eval(o); }; });

    auto* cmp = app.add_subcommand("compare", "Running max of log Phi_m against a closed-form oracle");
    spec_flag(cmp);
    cmp->add_option("--oracle", o.oracle, "torus or circle")->required();
    cmp->add_option("--m-list", o.m_list, "Ascending degrees, e.g. 2,4,8")->required();
    cmp->add_option("--grid", o.grid, "Grid points JSON file")->required()->check(CLI::ExistingFile);
    cmp->add_option("--set", o.set, "Sample-set JSON file (default: 256 circle or 32-per-axis torus samples)")
        ->check(CLI::ExistingFile);
    cmp->add_option("--facets", o.facets, "Polygon facets per modulus constraint");
    cmp->add_option("--out", o.out, "CSV output path (stdout if omitted)");
    cmp->callback([&] { action = [&] { return compare_cmd(o); }; });

    auto* t12 = app.add_subcommand("thm12", "Compare log Phi for S with the pullback of log Phi for T = L^-1(S)");
    spec_flag(t12);
    t12->add_option("--set", o.set, "Sample-set JSON file")->required()->check(CLI::ExistingFile);
    t12->add_option("--m-list", o.m_list, "Ascending degrees")->required();
    t12->add_option("--grid", o.grid, "Grid points JSON file")->required()->check(CLI::ExistingFile);
    t12->add_option("--facets", o.facets, "Polygon facets per modulus constraint");
    t12->add_option("--out", o.out, "CSV output path; oracle_V holds the T-side value, err the difference");
    t12->callback([&] { action = [&] { return thm12_cmd(o); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(2, "validation", e.what());
    }

    try {
        return action();
    } catch (const ValidationError& e) {
        return fail(2, "validation", e.what());
    } catch (const NumericalError& e) {
        return fail(3, "numerical", e.what());
    } catch (const std::exception& e) {
        return fail(3, "numerical", e.what());
    }
}
