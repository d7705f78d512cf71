#include "sztk/lattice_algebra.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

namespace sztk {

namespace {

void add_row_multiple(IntMatrix& m, std::size_t target, std::size_t source, const Integer& factor) {
    if (sgn(factor) == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j) m(target, j) += factor * m(source, j);
}

void add_column_multiple(IntMatrix& m, std::size_t target, std::size_t source, const Integer& factor) {
    if (sgn(factor) == 0) return;
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, target) += factor * m(i, source);
}

Integer truncated_quotient(const Integer& a, const Integer& b) {
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer floored_quotient(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

bool is_integral(const Rational& r) { return r.get_den() == 1; }

IntMatrix adjugate(const IntMatrix& a) {
    const std::size_t n = a.rows();
    IntMatrix adj(n, n, Integer(0));
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntMatrix minor(n - 1, n - 1);
            for (std::size_t r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (std::size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor(rr, cc++) = a(r, c);
                }
                ++rr;
            }
            Integer d = determinant(minor);
            adj(i, j) = ((i + j) % 2 == 0) ? d : Integer(-d);
        }
    return adj;
}

// Integer arithmetic used by the parallelepiped scan: either a checked
// 128-bit fast path or GMP.
using Wide = __int128;

Wide floor_div(Wide a, Wide b) {
    Wide q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
Wide ceil_div(Wide a, Wide b) { return -floor_div(-a, b); }
Integer floor_div(const Integer& a, const Integer& b) { return floored_quotient(a, b); }
Integer ceil_div(const Integer& a, const Integer& b) { return -floored_quotient(Integer(-a), b); }

Integer to_integer(Wide v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    Integer hi(static_cast<unsigned long>(u >> 64));
    Integer lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    Integer r = (hi << 64) + lo;
    return neg ? Integer(-r) : r;
}

template <class Int>
Int convert(const Integer& v) {
    if constexpr (std::is_same_v<Int, Integer>) return v;
    else return static_cast<Wide>(v.get_si());
}

// Visits integer x in lexicographic order with 0 <= (adj x)_k < det for
// every k (det > 0 after normalization). Stops when visit returns false.
template <class Int>
void scan_parallelepiped(const IntMatrix& adj_in, const Integer& det_in, const std::vector<Integer>& lower_in,
                         const std::vector<Integer>& upper_in,
                         const std::function<bool(const std::vector<Integer>&)>& visit) {
    const std::size_t l = adj_in.rows();
    const bool flip = sgn(det_in) < 0;
    std::vector<Int> adj(l * l);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j) adj[i * l + j] = convert<Int>(flip ? Integer(-adj_in(i, j)) : adj_in(i, j));
    const Int det = convert<Int>(flip ? Integer(-det_in) : det_in);
    std::vector<Int> lower(l), upper(l);
    for (std::size_t i = 0; i < l; ++i) {
        lower[i] = convert<Int>(lower_in[i]);
        upper[i] = convert<Int>(upper_in[i]);
    }

    std::vector<Int> x(lower);
    std::vector<Integer> out(l);
    for (;;) {
        // Range of the last coordinate allowed by every inequality.
        Int lo = lower[l - 1];
        Int hi = upper[l - 1];
        bool empty = false;
        for (std::size_t k = 0; k < l && !empty; ++k) {
            Int base = 0;
            for (std::size_t j = 0; j + 1 < l; ++j) base += adj[k * l + j] * x[j];
            const Int c = adj[k * l + l - 1];
            if (c == 0) {
                empty = base < 0 || base >= det;
            } else if (c > 0) {
                lo = std::max(lo, Int(ceil_div(Int(-base), c)));
                hi = std::min(hi, Int(floor_div(Int(det - 1 - base), c)));
            } else {
                lo = std::max(lo, Int(ceil_div(Int(det - 1 - base), c)));
                hi = std::min(hi, Int(floor_div(Int(-base), c)));
            }
        }
        if (!empty) {
            for (Int v = lo; v <= hi; ++v) {
                for (std::size_t j = 0; j + 1 < l; ++j) {
                    if constexpr (std::is_same_v<Int, Integer>) out[j] = x[j];
                    else out[j] = to_integer(x[j]);
                }
                if constexpr (std::is_same_v<Int, Integer>) out[l - 1] = v;
                else out[l - 1] = to_integer(v);
                if (!visit(out)) return;
            }
        }
        // Advance the leading l-1 coordinates.
        std::size_t j = l - 1;
        for (;;) {
            if (j == 0) return;
            --j;
            if (x[j] < upper[j]) {
                x[j] += 1;
                break;
            }
            x[j] = lower[j];
        }
    }
}

void scan_parallelepiped(const std::vector<std::vector<Integer>>& generators,
                         const std::function<bool(const std::vector<Integer>&)>& visit) {
    const std::size_t l = generators.size();
    if (l == 0) throw ValidationError("parallelepiped needs at least one generator");
    for (const auto& g : generators)
        if (g.size() != l) throw ValidationError("parallelepiped generators must be square");
    const IntMatrix a = IntMatrix::from_columns(l, generators);
    const Integer det = determinant(a);
    if (sgn(det) == 0) throw ValidationError("parallelepiped generators are linearly dependent");
    const IntMatrix adj = adjugate(a);

    std::vector<Integer> lower(l, Integer(0)), upper(l, Integer(0));
    for (std::size_t i = 0; i < l; ++i)
        for (const auto& g : generators) {
            if (sgn(g[i]) < 0) lower[i] += g[i];
            else upper[i] += g[i];
        }

    // 128-bit path: inputs below 2^60 keep every product below 2^120 and a
    // sum of at most 3 such products below 2^122.
    const Integer bound = Integer(1) << 60;
    bool fits = l <= 3 && abs(det) < bound;
    for (std::size_t i = 0; i < l && fits; ++i) {
        fits = abs(lower[i]) < bound && abs(upper[i]) < bound;
        for (std::size_t j = 0; j < l && fits; ++j) fits = abs(adj(i, j)) < bound;
    }
    if (fits) scan_parallelepiped<Wide>(adj, det, lower, upper, visit);
    else scan_parallelepiped<Integer>(adj, det, lower, upper, visit);
}

bool is_zero_vector(const std::vector<Integer>& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) == 0; });
}

} // namespace

std::vector<Integer> SnfResult::diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
}

SnfResult smith_normal_form(const IntMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    IntMatrix d = a;
    IntMatrix u = IntMatrix::identity(m);
    IntMatrix v = IntMatrix::identity(n);

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // Smallest nonzero magnitude in the trailing block goes to (t, t).
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (sgn(d(i, j)) != 0 && (pi == m || abs(d(i, j)) < abs(d(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m) return {std::move(u), std::move(d), std::move(v)};
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_columns(t, pj);
            v.swap_columns(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (sgn(d(i, t)) == 0) continue;
                const Integer q = -truncated_quotient(d(i, t), d(t, t));
                add_row_multiple(d, i, t, q);
                add_row_multiple(u, i, t, q);
                clean = clean && sgn(d(i, t)) == 0;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (sgn(d(t, j)) == 0) continue;
                const Integer q = -truncated_quotient(d(t, j), d(t, t));
                add_column_multiple(d, j, t, q);
                add_column_multiple(v, j, t, q);
                clean = clean && sgn(d(t, j)) == 0;
            }
            if (!clean) continue;

            // Divisibility: pull an offending row into row t and retry.
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            add_row_multiple(d, t, bad, Integer(1));
            add_row_multiple(u, t, bad, Integer(1));
        }
        if (sgn(d(t, t)) < 0) {
            for (std::size_t j = 0; j < n; ++j) d(t, j) = -d(t, j);
            for (std::size_t j = 0; j < m; ++j) u(t, j) = -u(t, j);
        }
    }
    return {std::move(u), std::move(d), std::move(v)};
}

Integer determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw ValidationError("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Integer prev = 1;
    int sign = 1;
    // Fraction-free Bareiss elimination; every division is exact.
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m(k, k)) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(m(p, k)) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : Integer(-m(n - 1, n - 1));
}

IntMatrix hermite_column_basis(const IntMatrix& columns) {
    IntMatrix h = columns;
    const std::size_t n = h.rows();
    const std::size_t k = h.cols();
    std::size_t c = 0;
    for (std::size_t i = 0; i < n && c < k; ++i) {
        for (;;) {
            std::size_t best = k;
            for (std::size_t j = c; j < k; ++j)
                if (sgn(h(i, j)) != 0 && (best == k || abs(h(i, j)) < abs(h(i, best)))) best = j;
            if (best == k) break;
            h.swap_columns(c, best);
            bool done = true;
            for (std::size_t j = c + 1; j < k; ++j) {
                if (sgn(h(i, j)) == 0) continue;
                add_column_multiple(h, j, c, Integer(-truncated_quotient(h(i, j), h(i, c))));
                done = done && sgn(h(i, j)) == 0;
            }
            if (done) break;
        }
        if (sgn(h(i, c)) == 0) continue;
        if (sgn(h(i, c)) < 0)
            for (std::size_t r = 0; r < n; ++r) h(r, c) = -h(r, c);
        for (std::size_t j = 0; j < c; ++j)
            add_column_multiple(h, j, c, Integer(-floored_quotient(h(i, j), h(i, c))));
        ++c;
    }
    IntMatrix out(n, c);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < c; ++j) out(i, j) = h(i, j);
    return out;
}

IntMatrix saturate(const ExactMatrix& generators) {
    const std::size_t n = generators.rows();
    const std::size_t l = generators.cols();
    RatMatrix g(n, l);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < l; ++j) {
            if (!generators(i, j).is_rational()) throw ValidationError("saturate needs rational generators");
            g(i, j) = generators(i, j).rational_part();
        }
    if (rank(g) != l) throw ValidationError("saturate needs linearly independent generators");
    if (l == 0) return IntMatrix(n, 0);
    if (l == n) return IntMatrix::identity(n);

    // Integer constraint matrix C with ker C = W.
    const auto perp = kernel_basis(g.transpose());
    IntMatrix c(perp.size(), n);
    for (std::size_t r = 0; r < perp.size(); ++r) {
        Integer lcm = 1;
        for (const auto& x : perp[r]) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
        for (std::size_t j = 0; j < n; ++j) {
            Rational scaled = perp[r][j] * Rational(lcm);
            c(r, j) = scaled.get_num();
        }
    }
    const SnfResult snf = smith_normal_form(c);
    std::size_t r = 0;
    for (const auto& x : snf.diagonal())
        if (sgn(x) != 0) ++r;
    IntMatrix kernel(n, n - r);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = r; j < n; ++j) kernel(i, j - r) = snf.V(i, j);
    return hermite_column_basis(kernel);
}

std::vector<std::vector<Integer>> parallelepiped_points(const std::vector<std::vector<Integer>>& generators) {
    std::vector<std::vector<Integer>> points;
    scan_parallelepiped(generators, [&](const std::vector<Integer>& x) {
        points.push_back(x);
        return true;
    });
    return points;
}

ReductionTrace parallelepiped_reduce(const std::vector<std::vector<Integer>>& generators) {
    ReductionTrace trace;
    auto work = generators;
    const std::size_t l = work.size();
    for (;;) {
        const IntMatrix a = IntMatrix::from_columns(l, work);
        const Integer det = determinant(a);
        if (sgn(det) == 0) throw ValidationError("parallelepiped generators are linearly dependent");
        trace.determinants.push_back(abs(det));

        std::vector<Integer> found;
        scan_parallelepiped(work, [&](const std::vector<Integer>& x) {
            if (is_zero_vector(x)) return true;
            found = x;
            return false;
        });
        if (found.empty()) break;

        std::vector<Rational> rhs(found.begin(), found.end());
        const auto lambda = solve(to_rational(a), std::span<const Rational>(rhs));
        std::size_t replaced = l;
        for (std::size_t k = 0; k < l; ++k)
            if (sgn((*lambda)[k]) != 0) {
                replaced = k;
                break;
            }
        work[replaced] = std::move(found);
    }
    trace.vectors = std::move(work);
    return trace;
}

LatticeMap construct_L(const ConvexBody& body) {
    const DensityVerdict density = is_rationally_dense(body);
    if (!density.dense) throw ValidationError("S ∩ Q^n is not dense in S; no lattice map exists");
    const std::size_t n = body.dimension();
    const std::size_t l = body.affine_dimension();
    if (l == 0) throw ValidationError("S = {0} has no lattice map");

    ExactMatrix span(n, l);
    for (std::size_t j = 0; j < l; ++j)
        for (std::size_t i = 0; i < n; ++i) span(i, j) = QuadExt(density.rational_span[j][i]);
    const IntMatrix m = saturate(span);

    // First row set j_1 < ... < j_l, lexicographically, with independent rows.
    std::vector<std::size_t> pick(l);
    std::iota(pick.begin(), pick.end(), 0);
    std::vector<std::vector<Integer>> rows;
    for (;;) {
        rows.clear();
        for (auto j : pick) rows.push_back(m.row(j));
        if (sgn(determinant(IntMatrix::from_rows(l, rows))) != 0) break;
        std::size_t i = l;
        while (i > 0 && pick[i - 1] == n - l + i - 1) --i;
        if (i == 0) throw NumericalError("saturated basis has rank below l");
        ++pick[i - 1];
        for (std::size_t k = i; k < l; ++k) pick[k] = pick[k - 1] + 1;
    }

    const ReductionTrace trace = parallelepiped_reduce(rows);
    const RatMatrix b = to_rational(IntMatrix::from_rows(l, trace.vectors));
    const auto b_inv = inverse(b);
    if (!b_inv) throw NumericalError("reduced basis is singular");
    const RatMatrix l_rat = to_rational(m) * *b_inv;
    IntMatrix l_int(n, l);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < l; ++j) {
            if (!is_integral(l_rat(i, j))) throw NumericalError("L = M B^{-1} is not integral");
            l_int(i, j) = l_rat(i, j).get_num();
        }

    IntMatrix kernel_rows(n - l, n);
    if (l < n) {
        const auto perp = kernel_basis(to_rational(m).transpose());
        ExactMatrix perp_cols(n, perp.size());
        for (std::size_t j = 0; j < perp.size(); ++j)
            for (std::size_t i = 0; i < n; ++i) perp_cols(i, j) = QuadExt(perp[j][i]);
        kernel_rows = saturate(perp_cols).transpose();
    }

    LatticeMap map(std::move(l_int), std::move(kernel_rows));
    if (!verify_map(map, body).all()) throw NumericalError("constructed lattice map failed its certificate");
    return map;
}

MapCertificate verify_map(const RatMatrix& map, const ConvexBody& body) {
    MapCertificate cert;
    const std::size_t n = map.rows();
    const std::size_t l = map.cols();
    if (n != body.dimension()) throw ValidationError("map target dimension differs from body dimension");

    cert.integer_entries = true;
    IntMatrix l_int(n, l);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < l; ++j) {
            if (!is_integral(map(i, j))) cert.integer_entries = false;
            else l_int(i, j) = map(i, j).get_num();
        }

    if (cert.integer_entries) {
        const auto diag = smith_normal_form(l_int).diagonal();
        cert.unimodular_smith_form =
            diag.size() == l && std::all_of(diag.begin(), diag.end(), [](const Integer& x) { return abs(x) == 1; });
    }

    const DensityVerdict density = is_rationally_dense(body);
    if (cert.integer_entries && density.dense && body.affine_dimension() > 0) {
        ExactMatrix span(n, body.affine_dimension());
        for (std::size_t j = 0; j < span.cols(); ++j)
            for (std::size_t i = 0; i < n; ++i) span(i, j) = QuadExt(density.rational_span[j][i]);
        const RatMatrix sat = to_rational(saturate(span));
        auto expresses = [](const RatMatrix& basis, const RatMatrix& targets) {
            for (std::size_t j = 0; j < targets.cols(); ++j) {
                const auto col = targets.column(j);
                const auto y = solve(basis, std::span<const Rational>(col));
                if (!y) return false;
                if (!std::all_of(y->begin(), y->end(), is_integral)) return false;
            }
            return true;
        };
        cert.generates_saturated_lattice = rank(map) == l && expresses(sat, map) && expresses(map, sat);
    }

    try {
        const auto gens = preimage_generators(body, map);
        cert.preimage_nonnegative = std::all_of(gens.begin(), gens.end(), [](const ExactPoint& t) {
            return std::all_of(t.begin(), t.end(), [](const QuadExt& x) { return qext_sign(x) >= 0; });
        });
    } catch (const ValidationError&) {
        cert.preimage_nonnegative = false;
    }
    return cert;
}

MapCertificate verify_map(const LatticeMap& map, const ConvexBody& body) {
    return verify_map(map.rational_matrix(), body);
}

LatticeMap::LatticeMap(IntMatrix l_columns, IntMatrix kernel_rows)
    : n_(l_columns.rows()), ell_(l_columns.cols()), l_(std::move(l_columns)), kernel_(std::move(kernel_rows)) {
    if (n_ == 0 || ell_ == 0 || ell_ > n_) throw ValidationError("lattice map needs 1 <= l <= n");
    if (kernel_.rows() != n_ - ell_ || (kernel_.rows() > 0 && kernel_.cols() != n_))
        throw ValidationError("lattice map needs n - l kernel rows of length n");

    b_ = IntMatrix(n_, n_);
    for (std::size_t k = 0; k < ell_; ++k)
        for (std::size_t j = 0; j < n_; ++j) b_(k, j) = l_(j, k);
    for (std::size_t k = 0; k < kernel_.rows(); ++k)
        for (std::size_t j = 0; j < n_; ++j) b_(ell_ + k, j) = kernel_(k, j);

    if (sgn(determinant(b_)) == 0) throw ValidationError("exponent rows eta_1..eta_n are dependent");
    for (std::size_t k = 0; k < ell_; ++k)
        for (std::size_t r = ell_; r < n_; ++r) {
            Integer dot = 0;
            for (std::size_t j = 0; j < n_; ++j) dot += b_(k, j) * b_(r, j);
            if (sgn(dot) != 0) throw ValidationError("kernel rows are not orthogonal to the image");
        }
    const auto diag = smith_normal_form(l_).diagonal();
    if (!std::all_of(diag.begin(), diag.end(), [](const Integer& x) { return abs(x) == 1; }))
        throw ValidationError("L(Z^l) is not saturated: Smith form has an entry other than +-1");

    exponents_.reserve(n_ * n_);
    for (std::size_t k = 0; k < n_; ++k)
        for (std::size_t j = 0; j < n_; ++j) {
            if (!b_(k, j).fits_slong_p()) throw ValidationError("exponent too large");
            exponents_.push_back(b_(k, j).get_si());
        }
}

RatMatrix LatticeMap::rational_matrix() const { return to_rational(l_); }

} // namespace sztk
