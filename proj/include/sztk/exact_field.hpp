#pragma once

// Exact arithmetic over Q and Q(sqrt d), and dense elimination over either
// field. Integers are GMP-backed throughout; nothing here can overflow.

#include "sztk/error.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sztk {

using Integer = mpz_class;
using Rational = mpq_class;

/// Radicand used for values that never touch a surd.
inline constexpr long kDefaultRadicand = 2;

bool is_square_free(long d);

/// "p/q", or "p" when q = 1.
std::string to_string(const Rational& r);
/// Parses "p", "p/q", or a plain decimal integer; canonicalizes.
Rational parse_rational(const std::string& text);

/// a + b*sqrt(d) with a, b rational and d square-free, d >= 2.
///
/// Binary operations accept operands carrying different radicands only when
/// at least one of them is rational (surd part zero); mixing two genuine
/// surds over different fields throws ValidationError.
class QuadExt {
public:
    QuadExt() = default;
    QuadExt(long value) : a_(value) {} // NOLINT(google-explicit-constructor)
    QuadExt(Rational a) : a_(std::move(a)) { a_.canonicalize(); } // NOLINT(google-explicit-constructor)
    QuadExt(Rational a, Rational b, long radicand);

    const Rational& rational_part() const { return a_; }
    const Rational& surd_part() const { return b_; }
    long radicand() const { return d_; }
    bool is_rational() const { return sgn(b_) == 0; }
    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

    /// Nearest double, computed from a 256-bit intermediate.
    double to_double() const;
    /// Greatest integer <= value, exact.
    Integer floor() const;
    /// Smallest integer >= value, exact.
    Integer ceil() const;

    QuadExt inverse() const;

    QuadExt& operator+=(const QuadExt& o);
    QuadExt& operator-=(const QuadExt& o);
    QuadExt& operator*=(const QuadExt& o);
    QuadExt& operator/=(const QuadExt& o) { return *this *= o.inverse(); }

    friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
    friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
    friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
    friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
    QuadExt operator-() const;

    friend bool operator==(const QuadExt& x, const QuadExt& y);

private:
    long merged_radicand(const QuadExt& o) const;

    Rational a_{0};
    Rational b_{0};
    long d_ = kDefaultRadicand;
};

/// Exact sign of a + b*sqrt(d): -1, 0 or +1.
int qext_sign(const QuadExt& x);

/// Human-readable form, e.g. "1/2+3*sqrt(2)".
std::string to_string(const QuadExt& x);

// Field traits used by the generic elimination below.
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const QuadExt& x) { return x.is_zero(); }
inline int field_sign(const Rational& x) { return sgn(x); }
inline int field_sign(const QuadExt& x) { return qext_sign(x); }

/// Dense row-major matrix. Zero-sized shapes are allowed so that empty
/// kernels and empty constraint sets need no special casing.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n, T(0));
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    /// Builds a matrix whose columns are the given vectors (all of length rows).
    static Matrix from_columns(std::size_t rows, const std::vector<std::vector<T>>& columns) {
        Matrix m(rows, columns.size(), T(0));
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].size() != rows) throw ValidationError("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
        }
        return m;
    }

    static Matrix from_rows(std::size_t cols, const std::vector<std::vector<T>>& rows) {
        Matrix m(rows.size(), cols, T(0));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw ValidationError("row length mismatch");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    std::vector<T> column(std::size_t j) const {
        std::vector<T> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
        return c;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_columns(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw ValidationError("matrix product shape mismatch");
        Matrix r(x.rows_, y.cols_, T(0));
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                if (is_zero_entry(x(i, k))) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
            }
        return r;
    }

    std::vector<T> apply(std::span<const T> v) const {
        if (v.size() != cols_) throw ValidationError("matrix-vector shape mismatch");
        std::vector<T> r(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
    }

private:
    static bool is_zero_entry(const T& v) {
        if constexpr (requires { sgn(v); }) return sgn(v) == 0;
        else return is_zero(v);
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using ExactMatrix = Matrix<QuadExt>;

/// Reduced row echelon form together with its pivot columns.
template <class T>
struct Echelon {
    Matrix<T> reduced;
    std::vector<std::size_t> pivot_columns;
};

/// Gauss-Jordan elimination; the pivot is the first nonzero entry in the
/// current column.
template <class T>
Echelon<T> row_echelon(Matrix<T> m) {
    Echelon<T> out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && is_zero(m(p, c))) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        const T inv = T(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            const T f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        out.pivot_columns.push_back(c);
        ++r;
    }
    out.reduced = std::move(m);
    return out;
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
    return row_echelon(m).pivot_columns.size();
}

/// Basis of the right null space: one vector per free column, with a 1 in
/// that slot.
template <class T>
std::vector<std::vector<T>> kernel_basis(const Matrix<T>& m) {
    const auto e = row_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_columns) is_pivot[c] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<T> v(m.cols(), T(0));
        v[f] = T(1);
        for (std::size_t r = 0; r < e.pivot_columns.size(); ++r) v[e.pivot_columns[r]] = -e.reduced(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Some solution of a x = b (free variables set to zero), or nullopt when
/// the system is inconsistent.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, std::span<const T> b) {
    if (b.size() != a.rows()) throw ValidationError("right-hand side length mismatch");
    Matrix<T> aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    const auto e = row_echelon(std::move(aug));
    if (!e.pivot_columns.empty() && e.pivot_columns.back() == a.cols()) return std::nullopt;
    std::vector<T> x(a.cols(), T(0));
    for (std::size_t r = 0; r < e.pivot_columns.size(); ++r) x[e.pivot_columns[r]] = e.reduced(r, a.cols());
    return x;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
    if (a.rows() != a.cols()) throw ValidationError("inverse of a non-square matrix");
    const std::size_t n = a.rows();
    Matrix<T> aug(n, 2 * n, T(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = T(1);
    }
    const auto e = row_echelon(std::move(aug));
    if (e.pivot_columns.size() < n || e.pivot_columns[n - 1] != n - 1) return std::nullopt;
    Matrix<T> inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

/// Exact Phase-I simplex: is there x >= 0 with a x = b?
///
/// Bland's rule on both the entering and the leaving choice, so the method
/// terminates on degenerate systems.
template <class T>
bool nonnegative_feasible(const Matrix<T>& a, std::span<const T> b) {
    const std::size_t rows = a.rows();
    const std::size_t vars = a.cols();
    if (b.size() != rows) throw ValidationError("right-hand side length mismatch");
    if (rows == 0) return true;

    // Columns: vars originals, rows artificials, then rhs.
    const std::size_t width = vars + rows + 1;
    Matrix<T> t(rows, width, T(0));
    for (std::size_t i = 0; i < rows; ++i) {
        const bool flip = field_sign(b[i]) < 0;
        for (std::size_t j = 0; j < vars; ++j) t(i, j) = flip ? T(-a(i, j)) : a(i, j);
        t(i, vars + i) = T(1);
        t(i, width - 1) = flip ? T(-b[i]) : b[i];
    }
    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) basis[i] = vars + i;

    // Reduced costs of "minimize the sum of artificials".
    std::vector<T> cost(width, T(0));
    for (std::size_t j = 0; j < vars; ++j)
        for (std::size_t i = 0; i < rows; ++i) cost[j] -= t(i, j);
    for (std::size_t i = 0; i < rows; ++i) cost[width - 1] -= t(i, width - 1);

    for (;;) {
        std::size_t enter = width;
        for (std::size_t j = 0; j + 1 < width; ++j) {
            if (field_sign(cost[j]) < 0) {
                enter = j;
                break;
            }
        }
        if (enter == width) break;

        std::size_t leave = rows;
        T best{};
        for (std::size_t i = 0; i < rows; ++i) {
            if (field_sign(t(i, enter)) <= 0) continue;
            T ratio = t(i, width - 1) / t(i, enter);
            if (leave == rows) {
                leave = i;
                best = ratio;
                continue;
            }
            const int cmp = field_sign(T(ratio - best));
            if (cmp < 0 || (cmp == 0 && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == rows) break; // cannot happen for a bounded Phase-I objective

        const T inv = T(1) / t(leave, enter);
        for (std::size_t j = 0; j < width; ++j) t(leave, j) = t(leave, j) * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == leave || is_zero(t(i, enter))) continue;
            const T f = t(i, enter);
            for (std::size_t j = 0; j < width; ++j) t(i, j) -= f * t(leave, j);
        }
        if (!is_zero(cost[enter])) {
            const T f = cost[enter];
            for (std::size_t j = 0; j < width; ++j) cost[j] -= f * t(leave, j);
        }
        basis[leave] = enter;
    }
    return is_zero(cost[width - 1]);
}

/// Right null space of an exact matrix over Q(sqrt d).
std::vector<std::vector<QuadExt>> exact_kernel(const ExactMatrix& m);
/// Rank over Q(sqrt d).
std::size_t exact_rank(const ExactMatrix& m);

} // namespace sztk
