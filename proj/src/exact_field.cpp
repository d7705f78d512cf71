#include "sztk/exact_field.hpp"

#include <cmath>

namespace sztk {

bool is_square_free(long d) {
    if (d < 2) return false;
    for (long p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0) return false;
    return true;
}

std::string to_string(const Rational& r) {
    Rational c(r);
    c.canonicalize();
    return c.get_str();
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ValidationError("empty rational literal");
    Rational r;
    if (r.set_str(text, 10) != 0) throw ValidationError("malformed rational literal '" + text + "'");
    if (sgn(r.get_den()) == 0) throw ValidationError("zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

QuadExt::QuadExt(Rational a, Rational b, long radicand) : a_(std::move(a)), b_(std::move(b)), d_(radicand) {
    if (sgn(a_.get_den()) == 0 || sgn(b_.get_den()) == 0) throw ValidationError("zero denominator");
    a_.canonicalize();
    b_.canonicalize();
    if (!is_square_free(radicand))
        throw ValidationError("radicand " + std::to_string(radicand) + " is not square-free and >= 2");
}

long QuadExt::merged_radicand(const QuadExt& o) const {
    if (d_ == o.d_ || o.is_rational()) return d_;
    if (is_rational()) return o.d_;
    throw ValidationError("mixed radicands " + std::to_string(d_) + " and " + std::to_string(o.d_));
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
    d_ = merged_radicand(o);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
    d_ = merged_radicand(o);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
    const long d = merged_radicand(o);
    Rational a = a_ * o.a_ + d * (b_ * o.b_);
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    d_ = d;
    return *this;
}

QuadExt QuadExt::operator-() const {
    QuadExt r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
}

QuadExt QuadExt::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(sqrt d)");
    // Norm a^2 - d b^2 is nonzero because sqrt(d) is irrational.
    const Rational norm = a_ * a_ - d_ * (b_ * b_);
    QuadExt r;
    r.d_ = d_;
    r.a_ = a_ / norm;
    r.b_ = -b_ / norm;
    return r;
}

bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.is_rational() || x.d_ == y.d_);
}

int qext_sign(const QuadExt& x) {
    const int sa = sgn(x.rational_part());
    const int sb = sgn(x.surd_part());
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: the larger magnitude of a^2 vs d b^2 wins.
    const Rational lhs = x.rational_part() * x.rational_part();
    const Rational rhs = x.radicand() * (x.surd_part() * x.surd_part());
    const int c = cmp(lhs, rhs);
    return c > 0 ? sa : (c < 0 ? sb : 0);
}

double QuadExt::to_double() const {
    if (is_rational()) return a_.get_d();
    mpf_class root(d_, 256);
    root = sqrt(root);
    mpf_class a(a_, 256);
    mpf_class b(b_, 256);
    mpf_class v(0, 256);
    v = a + b * root;
    return v.get_d();
}

Integer QuadExt::floor() const {
    Integer k;
    const double approx = to_double();
    if (std::isfinite(approx)) {
        k = Integer(std::floor(approx));
    } else {
        mpz_fdiv_q(k.get_mpz_t(), a_.get_num_mpz_t(), a_.get_den_mpz_t());
    }
    while (qext_sign(*this - QuadExt(Rational(k))) < 0) k -= 1;
    while (qext_sign(*this - QuadExt(Rational(k + 1))) >= 0) k += 1;
    return k;
}

Integer QuadExt::ceil() const {
    Integer f = floor();
    if (qext_sign(*this - QuadExt(Rational(f))) == 0) return f;
    return f + 1;
}

std::string to_string(const QuadExt& x) {
    if (x.is_rational()) return to_string(x.rational_part());
    std::string s;
    if (sgn(x.rational_part()) != 0) s = to_string(x.rational_part());
    const Rational& b = x.surd_part();
    if (!s.empty() && sgn(b) > 0) s += "+";
    if (b == 1) {
    } else if (b == -1) {
        s += "-";
    } else {
        s += to_string(b) + "*";
    }
    s += "sqrt(" + std::to_string(x.radicand()) + ")";
    return s;
}

std::vector<std::vector<QuadExt>> exact_kernel(const ExactMatrix& m) { return kernel_basis(m); }

std::size_t exact_rank(const ExactMatrix& m) { return rank(m); }

} // namespace sztk
