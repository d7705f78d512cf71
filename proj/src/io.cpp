#include "sztk/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace sztk::io {

namespace {

using nlohmann::json;

Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw ValidationError("expected a rational as string or integer, got " + j.dump());
}

QuadExt coordinate_from_json(const json& j, long radicand) {
    if (j.is_array()) {
        if (j.size() != 2) throw ValidationError("quadratic coordinate must be [\"a\",\"b\"]");
        return QuadExt(rational_from_json(j[0]), rational_from_json(j[1]), radicand);
    }
    return QuadExt(rational_from_json(j), Rational(0), radicand);
}

double weight_value(const json& j) {
    if (j.is_null()) return kInfiniteWeight;
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "+inf" || s == "Infinity") return kInfiniteWeight;
        throw ValidationError("unknown weight literal '" + s + "'");
    }
    if (!j.is_number()) throw ValidationError("weight must be a number, null or \"inf\"");
    return j.get<double>();
}

std::complex<double> coordinate_value(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    if (j.is_string()) return parse_complex(j.get<std::string>());
    throw ValidationError("complex coordinate must be [re, im], a number, or a string");
}

double parse_double(const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ValidationError("malformed number '" + text + "'");
    }
    if (used != text.size()) throw ValidationError("malformed number '" + text + "'");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (parts.empty()) throw ValidationError("empty list");
    return parts;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

} // namespace

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
    }
}

ConvexBody body_from_json(const nlohmann::json& j) {
    try {
        const auto n = j.at("n").get<std::size_t>();
        const long radicand = j.value("radicand", kDefaultRadicand);
        std::vector<ExactPoint> vertices;
        for (const auto& v : j.at("vertices")) {
            ExactPoint p;
            for (const auto& c : v) p.push_back(coordinate_from_json(c, radicand));
            vertices.push_back(std::move(p));
        }
        return ConvexBody(n, radicand, std::move(vertices));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed body file: ") + e.what());
    }
}

nlohmann::json body_to_json(const ConvexBody& body) {
    json vertices = json::array();
    for (const auto& v : body.vertices()) {
        json p = json::array();
        for (const auto& c : v) p.push_back({to_string(c.rational_part()), to_string(c.surd_part())});
        vertices.push_back(std::move(p));
    }
    return {{"n", body.dimension()}, {"radicand", body.radicand()}, {"vertices", std::move(vertices)}};
}

IntMatrix int_matrix_from_json(const nlohmann::json& j) {
    const json& rows = j.is_object() ? j.at("matrix") : j;
    if (!rows.is_array() || rows.empty() || !rows[0].is_array() || rows[0].empty())
        throw ValidationError("matrix must be a non-empty array of non-empty rows");
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw ValidationError("matrix rows differ in length");
        for (std::size_t k = 0; k < m.cols(); ++k) {
            const Rational r = rational_from_json(rows[i][k]);
            if (r.get_den() != 1) throw ValidationError("matrix entries must be integers");
            m(i, k) = r.get_num();
        }
    }
    return m;
}

WeightedSampleSet samples_from_json(const nlohmann::json& j) {
    try {
        const auto kind = j.at("kind").get<std::string>();
        const json weight = j.value("weight", json{{"kind", "constant"}, {"value", 0.0}});
        const auto wkind = weight.at("kind").get<std::string>();
        if (wkind != "constant" && wkind != "table") throw ValidationError("weight kind must be constant or table");

        if (kind == "torus" || kind == "circle") {
            if (wkind != "constant") throw ValidationError("generated sample sets take a constant weight");
            const double c = weight_value(weight.at("value"));
            const auto count = j.at("count").get<std::size_t>();
            const double radius = j.value("radius", 1.0);
            if (kind == "circle") return circle_samples(count, radius, c);
            return torus_samples(j.at("n").get<std::size_t>(), count, radius, c);
        }
        if (kind == "explicit") {
            auto pts = points_from_json(j.at("points"));
            std::vector<double> w;
            if (wkind == "constant") {
                w.assign(pts.size(), weight_value(weight.at("value")));
            } else {
                for (const auto& v : weight.at("values")) w.push_back(weight_value(v));
            }
            if (j.contains("n") && !pts.empty() && j.at("n").get<std::size_t>() != pts.front().size())
                throw ValidationError("explicit points do not match n");
            return explicit_samples(std::move(pts), std::move(w));
        }
        throw ValidationError("unknown sample-set kind '" + kind + "'");
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed sample-set file: ") + e.what());
    }
}

std::vector<ComplexPoint> points_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw ValidationError("points must be an array");
    std::vector<ComplexPoint> out;
    for (const auto& p : j) {
        if (!p.is_array()) throw ValidationError("each point must be an array of coordinates");
        ComplexPoint z;
        for (const auto& c : p) z.push_back(coordinate_value(c));
        out.push_back(std::move(z));
    }
    return out;
}

std::complex<double> parse_complex(const std::string& raw) {
    const std::string text = trim(raw);
    if (text.empty()) throw ValidationError("empty complex literal");
    if (text.back() != 'i') return {parse_double(text), 0.0};
    const std::string body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not part of an exponent.
    std::size_t split_at = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split_at = k;
            break;
        }
    }
    auto imag_of = [](const std::string& s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        return parse_double(s);
    };
    if (split_at == std::string::npos) return {0.0, imag_of(body)};
    return {parse_double(body.substr(0, split_at)), imag_of(body.substr(split_at))};
}

ComplexPoint parse_complex_list(const std::string& text) {
    ComplexPoint z;
    for (const auto& part : split(text, ',')) z.push_back(parse_complex(part));
    return z;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> v;
    for (const auto& part : split(text, ',')) v.push_back(parse_double(trim(part)));
    return v;
}

std::vector<unsigned> parse_unsigned_list(const std::string& text) {
    std::vector<unsigned> v;
    for (const auto& part : split(text, ',')) {
        const std::string s = trim(part);
        unsigned x = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
        if (ec != std::errc() || ptr != s.data() + s.size() || x == 0)
            throw ValidationError("expected a positive integer, got '" + s + "'");
        v.push_back(x);
    }
    return v;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string format_point(const ComplexPoint& z) {
    std::string s;
    for (std::size_t j = 0; j < z.size(); ++j) {
        if (j > 0) s += ';';
        s += format_double(z[j].real()) + "," + format_double(z[j].imag());
    }
    return s;
}

void write_results_csv(std::ostream& out, std::size_t n, const std::vector<ResultRow>& rows) {
    for (std::size_t j = 1; j <= n; ++j) out << "z_re_" << j << ",z_im_" << j << ',';
    out << "m,log_phi_raw,log_phi_certified,oracle_V,err\n";
    for (const auto& r : rows) {
        if (r.z.size() != n) throw ValidationError("result row has the wrong dimension");
        for (const auto& c : r.z) out << format_double(c.real()) << ',' << format_double(c.imag()) << ',';
        out << r.m << ',' << format_double(r.log_phi_raw) << ',' << format_double(r.log_phi_certified) << ',';
        if (r.oracle) out << format_double(*r.oracle);
        out << ',';
        if (r.error) out << format_double(*r.error);
        out << '\n';
    }
}

} // namespace sztk::io
