#include "sztk/lattice_algebra.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace sztk;
using sztk::testing::qx;
using sztk::testing::rational_body;
using sztk::testing::unit_simplex;

namespace {

IntMatrix int_matrix(const std::vector<std::vector<long>>& rows) {
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
    std::uniform_int_distribution<long> e(-bound, bound);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = e(rng);
    return m;
}

// Determinant by cofactor expansion; independent of the library's Bareiss.
Integer cofactor_det(const IntMatrix& a) {
    const std::size_t n = a.rows();
    if (n == 1) return a(0, 0);
    Integer sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t k = 0, c = 0; k < n; ++k)
                if (k != j) minor(i - 1, c++) = a(i, k);
        const Integer term = a(0, j) * cofactor_det(minor);
        sum += (j % 2 == 0) ? term : Integer(-term);
    }
    return sum;
}

// gcd of all k x k minors.
Integer determinantal_divisor(const IntMatrix& a, std::size_t k) {
    std::vector<std::size_t> rows(a.rows()), cols(a.cols());
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    Integer g = 0;
    std::vector<bool> rsel(a.rows(), false), csel(a.cols(), false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
        std::fill(csel.begin(), csel.end(), false);
        std::fill(csel.begin(), csel.begin() + static_cast<std::ptrdiff_t>(k), true);
        do {
            IntMatrix minor(k, k);
            for (std::size_t i = 0, r = 0; i < a.rows(); ++i) {
                if (!rsel[i]) continue;
                for (std::size_t j = 0, c = 0; j < a.cols(); ++j)
                    if (csel[j]) minor(r, c++) = a(i, j);
                ++r;
            }
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Integer(abs(cofactor_det(minor))).get_mpz_t());
        } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    return g;
}

std::vector<std::vector<Integer>> columns_of(const IntMatrix& m) {
    std::vector<std::vector<Integer>> out(m.cols(), std::vector<Integer>(m.rows()));
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) out[j][i] = m(i, j);
    return out;
}

IntMatrix from_columns(const std::vector<std::vector<Integer>>& cols) {
    IntMatrix m(cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < cols[j].size(); ++i) m(i, j) = cols[j][i];
    return m;
}

// x = sum lambda_k a_k with all lambda_k >= 0, checked exactly.
bool in_cone(const std::vector<std::vector<Integer>>& gens, const std::vector<Integer>& x) {
    RatMatrix a(x.size(), gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t i = 0; i < x.size(); ++i) a(i, j) = Rational(gens[j][i]);
    std::vector<Rational> b(x.begin(), x.end());
    return nonnegative_feasible(a, std::span<const Rational>(b));
}

} // namespace

TEST_CASE("smith_normal_form examples") {
    const auto id = smith_normal_form(IntMatrix::identity(3));
    CHECK(id.D == IntMatrix::identity(3));
    const auto col = smith_normal_form(int_matrix({{1}, {2}}));
    CHECK(col.D == int_matrix({{1}, {0}}));
    CHECK(smith_normal_form(int_matrix({{2, 0}, {0, 2}})).D == int_matrix({{2, 0}, {0, 2}}));
    CHECK(smith_normal_form(int_matrix({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}})).diagonal() ==
          std::vector<Integer>{2, 6, 12});
}

TEST_CASE("smith form reconstruction and determinantal divisors") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    for (int it = 0; it < 200; ++it) {
        const IntMatrix a = random_matrix(rng, dim(rng), dim(rng), 9);
        const auto snf = smith_normal_form(a);
        CHECK(snf.U * a * snf.V == snf.D);
        CHECK(abs(determinant(snf.U)) == 1);
        CHECK(abs(determinant(snf.V)) == 1);
        const auto d = snf.diagonal();
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (i != j) CHECK(snf.D(i, j) == 0);
        // d_1 ... d_k = gcd of the k x k minors.
        Integer prod = 1;
        for (std::size_t k = 1; k <= d.size(); ++k) {
            CHECK(d[k - 1] >= 0);
            prod *= d[k - 1];
            CHECK(prod == determinantal_divisor(a, k));
        }
    }
}

TEST_CASE("determinant matches cofactor expansion") {
    std::mt19937_64 rng(19);
    for (int it = 0; it < 100; ++it) {
        const std::size_t n = 1 + static_cast<std::size_t>(it % 5);
        const IntMatrix a = random_matrix(rng, n, n, 9);
        CHECK(determinant(a) == cofactor_det(a));
    }
}

TEST_CASE("saturate examples") {
    ExactMatrix line(2, 1);
    line(0, 0) = qx(1);
    line(1, 0) = qx(2);
    CHECK(saturate(line) == int_matrix({{1}, {2}}));
    line(0, 0) = qx(2);
    line(1, 0) = qx(4);
    CHECK(saturate(line) == int_matrix({{1}, {2}}));
    CHECK(abs(determinant(saturate(ExactMatrix::identity(2)))) == 1);
    ExactMatrix surd(2, 1);
    surd(0, 0) = qx(1);
    surd(1, 0) = qx(0, 1);
    CHECK_THROWS_AS(saturate(surd), ValidationError);
}

TEST_CASE("hermite basis is canonical") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 50; ++it) {
        const IntMatrix a = random_matrix(rng, 3, 2, 6);
        if (determinant(a.transpose() * a) == 0) continue;
        IntMatrix u = IntMatrix::identity(2);
        u(0, 1) = 3;
        u(1, 0) = 1;
        u(1, 1) = 4; // det 1
        CHECK(hermite_column_basis(a) == hermite_column_basis(a * u));
    }
}

TEST_CASE("parallelepiped point count equals the determinant") {
    std::mt19937_64 rng(29);
    int checked = 0;
    while (checked < 60) {
        const std::size_t l = 1 + static_cast<std::size_t>(checked % 3);
        const IntMatrix a = random_matrix(rng, l, l, 5);
        const Integer det = abs(determinant(a));
        if (det == 0 || det > 30) continue;
        CHECK(parallelepiped_points(columns_of(a)).size() == det.get_ui());
        ++checked;
    }
}

TEST_CASE("parallelepiped_reduce examples") {
    const auto unchanged = parallelepiped_reduce({{1, 0}, {3, 1}});
    CHECK(unchanged.vectors == std::vector<std::vector<Integer>>{{1, 0}, {3, 1}});
    const auto one_step = parallelepiped_reduce({{2, 0}, {0, 1}});
    CHECK(abs(determinant(from_columns(one_step.vectors))) == 1);
    CHECK(one_step.determinants == std::vector<Integer>{2, 1});
    const auto six = parallelepiped_reduce({{2, 1}, {0, 3}});
    CHECK(abs(determinant(from_columns(six.vectors))) == 1);
    CHECK(six.determinants.front() == 6);
    CHECK(six.determinants.size() <= 6);
    CHECK_THROWS_AS(parallelepiped_reduce({{1, 2}, {2, 4}}), ValidationError);
}

TEST_CASE("parallelepiped_reduce properties") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 100; ++it) {
        const std::size_t l = 1 + static_cast<std::size_t>(it % 3);
        const IntMatrix a = random_matrix(rng, l, l, 9);
        if (determinant(a) == 0) continue;
        const auto gens = columns_of(a);
        const auto trace = parallelepiped_reduce(gens);
        CHECK(trace.determinants.front() == abs(determinant(a)));
        CHECK(trace.determinants.back() == 1);
        for (std::size_t i = 1; i < trace.determinants.size(); ++i)
            CHECK(trace.determinants[i] < trace.determinants[i - 1]);
        CHECK(abs(determinant(from_columns(trace.vectors))) == 1);
        for (const auto& v : trace.vectors) CHECK(in_cone(gens, v));
    }
}

TEST_CASE("construct_L examples") {
    const auto seg = rational_body(2, {{0, 0}, {1, 2}});
    const auto map = construct_L(seg);
    CHECK(map.matrix() == int_matrix({{1}, {2}}));
    const IntMatrix k = map.kernel_rows();
    CHECK((k == int_matrix({{2, -1}}) || k == int_matrix({{-2, 1}})));

    const auto full = construct_L(unit_simplex(2));
    CHECK(abs(determinant(full.matrix())) == 1);
    CHECK(verify_map(full, unit_simplex(2)).all());

    const auto longer = rational_body(2, {{0, 0}, {2, 4}});
    CHECK(construct_L(longer).matrix() == int_matrix({{1}, {2}}));
    CHECK_THROWS_AS(construct_L(sztk::testing::irrational_segment()), ValidationError);
}

TEST_CASE("verify_map examples") {
    const auto seg = rational_body(2, {{0, 0}, {1, 2}});
    RatMatrix good(2, 1);
    good(0, 0) = 1;
    good(1, 0) = 2;
    CHECK(verify_map(good, seg).all());
    RatMatrix doubled(2, 1);
    doubled(0, 0) = 2;
    doubled(1, 0) = 4;
    const auto cert = verify_map(doubled, seg);
    CHECK(cert.integer_entries);
    CHECK_FALSE(cert.generates_saturated_lattice);
    CHECK_FALSE(cert.unimodular_smith_form);
    CHECK(verify_map(RatMatrix::identity(2), unit_simplex(2)).all());
    RatMatrix half(2, 1);
    half(0, 0) = Rational(1, 2);
    half(1, 0) = 1;
    CHECK_FALSE(verify_map(half, seg).integer_entries);
}

TEST_CASE("construct_L certificates on random subspaces") {
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<long> c(0, 9);
    for (int it = 0; it < 80; ++it) {
        const std::size_t n = 2 + static_cast<std::size_t>(it % 3);
        const std::size_t l = 1 + static_cast<std::size_t>(it % static_cast<int>(std::min<std::size_t>(3, n)));
        std::vector<std::vector<long>> verts{std::vector<long>(n, 0)};
        for (std::size_t k = 0; k < l; ++k) {
            std::vector<long> v(n);
            for (auto& x : v) x = c(rng);
            verts.push_back(v);
        }
        const auto body = rational_body(n, verts);
        const auto map = construct_L(body);
        CHECK(map.image_dimension() == body.affine_dimension());
        CHECK(verify_map(map, body).all());
        // Kernel rows are orthogonal to every generator.
        for (std::size_t r = 0; r < map.kernel_rows().rows(); ++r)
            for (const auto& v : verts) {
                long dot = 0;
                for (std::size_t j = 0; j < n; ++j) dot += v[j] * map.kernel_rows()(r, j).get_si();
                CHECK(dot == 0);
            }
    }
}

TEST_CASE("LatticeMap validation") {
    CHECK_THROWS_AS(LatticeMap(int_matrix({{2}, {4}}), int_matrix({{2, -1}})), ValidationError);
    CHECK_THROWS_AS(LatticeMap(int_matrix({{1}, {2}}), int_matrix({{1, 1}})), ValidationError);
    CHECK_NOTHROW(LatticeMap(int_matrix({{1}, {2}}), int_matrix({{2, -1}})));
}
