#include "doctest.h"
#include "oracles.hpp"
#include "toricmmp/linalg.hpp"

#include <random>

using namespace toricmmp;
using oracle::iv;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

void check_snf(const IntMatrix& m) {
    auto [u, s, v] = smith_normal_form(m);
    CHECK(u * m * v == s);
    CHECK(abs(determinant(u)) == 1);
    CHECK(abs(determinant(v)) == 1);
    const std::size_t k = std::min(s.rows(), s.cols());
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j)
            if (i != j) CHECK(s(i, j) == 0);
    for (std::size_t i = 0; i < k; ++i) {
        CHECK(s(i, i) >= 0);
        if (i + 1 < k && s(i, i) != 0) CHECK(s(i + 1, i + 1) % s(i, i) == 0);
        if (i + 1 < k && s(i, i) == 0) CHECK(s(i + 1, i + 1) == 0);
    }
}

}  // namespace

TEST_CASE("smith normal form: fixed examples") {
    auto id = IntMatrix::identity(2);
    auto [u, s, v] = smith_normal_form(id);
    CHECK(s == id);
    CHECK(u * id * v == s);

    auto m = IntMatrix::from_rows({iv({2, 4}), iv({6, 8})});
    auto f = smith_normal_form(m);
    CHECK(f.S(0, 0) == 2);
    CHECK(f.S(1, 1) == 4);
    CHECK(f.S(0, 1) == 0);
    CHECK(f.S(1, 0) == 0);
    CHECK(abs(oracle::cofactor_det(m.row_list())) == 8);

    IntMatrix z(2, 3);
    auto fz = smith_normal_form(z);
    CHECK(fz.S == z);
}

TEST_CASE("smith normal form: random property sweep") {
    std::mt19937 rng(12345);
    for (int t = 0; t < 200; ++t) {
        std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        check_snf(random_matrix(rng, r, c, -6, 6));
    }
}

TEST_CASE("integer kernel basis") {
    auto p2 = IntMatrix::from_columns({iv({1, 0}), iv({0, 1}), iv({-1, -1})});
    auto k = integer_kernel_basis(p2);
    REQUIRE(k.size() == 1);
    CHECK(k[0] == iv({1, 1, 1}));

    CHECK(integer_kernel_basis(IntMatrix::identity(3)).empty());

    auto p1p1 = IntMatrix::from_columns({iv({1, 0}), iv({-1, 0}), iv({0, 1}), iv({0, -1})});
    auto kk = integer_kernel_basis(p1p1);
    CHECK(kk.size() == 2);
    CHECK(in_span(kk, iv({1, 1, 0, 0})));
    CHECK(in_span(kk, iv({0, 0, 1, 1})));
}

TEST_CASE("integer kernel basis is saturated and canonical") {
    std::mt19937 rng(777);
    for (int t = 0; t < 100; ++t) {
        std::size_t r = 1 + rng() % 3, c = r + 1 + rng() % 3;
        auto m = random_matrix(rng, r, c, -4, 4);
        auto k = integer_kernel_basis(m);
        CHECK(k.size() == c - rank(m));
        for (const auto& x : k) {
            CHECK(is_zero(m * x));
            for (const auto& e : x)
                if (e != 0) {
                    CHECK(e > 0);
                    break;
                }
        }
        // Saturation: the basis extends to a unimodular matrix iff the gcd of
        // its maximal minors is 1; equivalently its Smith invariants are all 1.
        if (!k.empty()) {
            auto s = smith_normal_form(IntMatrix::from_rows(k)).S;
            for (std::size_t i = 0; i < k.size(); ++i) CHECK(s(i, i) == 1);
        }
        CHECK(integer_kernel_basis(m) == k);
    }
}

TEST_CASE("rank and span") {
    CHECK(rank(std::vector<IntVector>{iv({1, 1, 1})}) == 1);
    CHECK(rank(std::vector<IntVector>{iv({1, 0}), iv({0, 1}), iv({1, 1})}) == 2);
    CHECK(rank(std::vector<IntVector>{}) == 0);
    CHECK(in_span(std::vector<IntVector>{iv({1, 1, 1})}, iv({2, 2, 2})));
    CHECK_FALSE(in_span(std::vector<IntVector>{iv({1, 1, 1})}, iv({1, 0, 0})));
    CHECK(in_span(std::vector<IntVector>{}, iv({0, 0, 0})));
}

TEST_CASE("rank agrees with the Bareiss oracle") {
    std::mt19937 rng(99);
    for (int t = 0; t < 300; ++t) {
        std::size_t r = rng() % 6, c = 1 + rng() % 6;
        auto m = random_matrix(rng, r, c, -2, 2);
        auto rows = m.row_list();
        if (r == 0) rows.clear();
        CHECK(rank(rows) == oracle::bareiss_rank(rows));
    }
}

TEST_CASE("determinant agrees with cofactor expansion") {
    std::mt19937 rng(5);
    for (int t = 0; t < 100; ++t) {
        std::size_t n = 1 + rng() % 5;
        auto m = random_matrix(rng, n, n, -5, 5);
        CHECK(determinant(m) == oracle::cofactor_det(m.row_list()));
    }
}

TEST_CASE("hermite form, quotient map and saturation") {
    auto h = row_hermite_form(IntMatrix::from_rows({iv({2, 4}), iv({6, 8})}));
    CHECK(h == IntMatrix::from_rows({iv({2, 0}), iv({0, 4})}));
    auto sat = saturated_span_basis({iv({2, 2, 0})}, 3);
    REQUIRE(sat.size() == 1);
    CHECK(sat[0] == iv({1, 1, 0}));
    auto q = quotient_map({iv({1, 1})}, 2);
    CHECK(q.rows() == 1);
    CHECK(is_zero(q * iv({1, 1})));
    CHECK(abs(dot(q.row(0), iv({1, 0}))) == 1);
}

TEST_CASE("solve and rational kernel") {
    std::vector<RationalVector> a = {to_rational(iv({1, 2})), to_rational(iv({3, 4}))};
    auto x = solve(a, to_rational(iv({5, 6})));
    REQUIRE(x);
    CHECK((*x)[0] == -4);
    CHECK((*x)[1] == Rational(9, 2));
    std::vector<RationalVector> b = {to_rational(iv({1, 1})), to_rational(iv({2, 2}))};
    CHECK_FALSE(solve(b, to_rational(iv({1, 3}))));
    CHECK(rational_kernel(b, 2).size() == 1);
    CHECK(primitive_integer({Rational(1, 2), Rational(-3, 4)}) == iv({2, -3}));
    CHECK(primitive(iv({4, -6, 0})) == iv({2, -3, 0}));
}
