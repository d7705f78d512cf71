#pragma once

// File formats shared by the CLI and the tests.
//
//   body:     { "n": 2, "radicand": 2, "vertices": [[["0","0"],["0","0"]], ...] }
//             each coordinate is ["a","b"] for a + b*sqrt(radicand); a bare
//             rational string or integer is accepted for b = 0.
//   matrix:   [[1, 2], [3, 4]] or { "matrix": [[...]] }; entries are
//             integers or decimal strings.
//   samples:  { "kind": "torus"|"circle"|"explicit", "n", "count", "radius",
//               "weight": {"kind":"constant","value":c} | {"kind":"table","values":[...]},
//               "points": [...] }
//   points:   [ [[re, im], ...], ... ]; a bare number is a real coordinate.

#include "sztk/convex_body.hpp"
#include "sztk/extremal.hpp"
#include "sztk/sample_set.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>

namespace sztk::io {

nlohmann::json read_json(const std::string& path);

ConvexBody body_from_json(const nlohmann::json& j);
nlohmann::json body_to_json(const ConvexBody& body);

IntMatrix int_matrix_from_json(const nlohmann::json& j);

WeightedSampleSet samples_from_json(const nlohmann::json& j);

std::vector<ComplexPoint> points_from_json(const nlohmann::json& j);

/// "2", "-1.5", "3i", "1.5+0.25i", "2-1e-3i".
std::complex<double> parse_complex(const std::string& text);
/// Comma-separated complex coordinates.
ComplexPoint parse_complex_list(const std::string& text);
/// Comma-separated doubles.
std::vector<double> parse_double_list(const std::string& text);
/// Comma-separated positive integers.
std::vector<unsigned> parse_unsigned_list(const std::string& text);

/// 15 significant digits, '.' separator.
std::string format_double(double v);
/// "re,im" pairs joined by ';'.
std::string format_point(const ComplexPoint& z);

struct ResultRow {
    ComplexPoint z;
    unsigned m = 0;
    double log_phi_raw = 0.0;
    double log_phi_certified = 0.0;
    std::optional<double> oracle;
    std::optional<double> error;
};

/// Columns z_re_1,z_im_1,...,m,log_phi_raw,log_phi_certified,oracle_V,err
/// with LF line endings; empty cells for absent oracle values.
void write_results_csv(std::ostream& out, std::size_t n, const std::vector<ResultRow>& rows);

} // namespace sztk::io
