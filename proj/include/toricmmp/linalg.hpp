#pragma once

// Exact integer / rational linear algebra. Everything here is a pure function
// of its arguments; no floating point is used anywhere in the library.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace toricmmp {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);

    static IntMatrix identity(std::size_t n);
    /// `cols` is only consulted when `rows` is empty.
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols = 0);
    static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows = 0);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntVector row(std::size_t r) const;
    IntVector column(std::size_t c) const;
    std::vector<IntVector> row_list() const;
    IntMatrix transpose() const;

    IntVector operator*(const IntVector& x) const;
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    bool operator==(const IntMatrix& other) const = default;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += k * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);
    /// col[dst] += k * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

struct SmithForm {
    IntMatrix U;  ///< unimodular, rows x rows
    IntMatrix S;  ///< diagonal, d1 | d2 | ... >= 0
    IntMatrix V;  ///< unimodular, cols x cols
};

/// U * M * V == S with S in Smith normal form.
SmithForm smith_normal_form(const IntMatrix& m);

/// Canonical Hermite normal form of the row lattice: echelon form, positive
/// pivots, entries above each pivot reduced into [0, pivot). Zero rows dropped.
IntMatrix row_hermite_form(const IntMatrix& m);

/// Basis of the saturated lattice {x in Z^cols : M x = 0}, Hermite-reduced.
std::vector<IntVector> integer_kernel_basis(const IntMatrix& m);

/// Basis (Hermite-reduced) of span_Q(vectors) ∩ Z^n.
std::vector<IntVector> saturated_span_basis(const std::vector<IntVector>& vectors, std::size_t n);

/// Surjective map Z^n -> Z^(n-k) whose kernel is span_Q(subspace) ∩ Z^n,
/// returned as a (n-k) x n matrix.
IntMatrix quotient_map(const std::vector<IntVector>& subspace, std::size_t n);

std::size_t rank(const std::vector<RationalVector>& vectors);
std::size_t rank(const std::vector<IntVector>& vectors);
std::size_t rank(const IntMatrix& m);

bool in_span(const std::vector<RationalVector>& vectors, const RationalVector& v);
bool in_span(const std::vector<IntVector>& vectors, const IntVector& v);

/// Determinant of a square matrix (fraction-free Bareiss elimination).
Integer determinant(const IntMatrix& m);

/// Solves A x = b over Q; returns std::nullopt when inconsistent. For
/// underdetermined systems free variables are set to zero.
std::optional<RationalVector> solve(const std::vector<RationalVector>& a_rows, const RationalVector& b);

/// Unique solution of a square nonsingular integer system over Q.
RationalVector solve_square(const IntMatrix& a, const IntVector& b);

/// Basis of the rational null space {x : A x = 0}.
std::vector<RationalVector> rational_kernel(const std::vector<RationalVector>& a_rows, std::size_t cols);

Integer vector_gcd(const IntVector& v);
/// v / gcd(v); the zero vector is returned unchanged.
IntVector primitive(IntVector v);
bool is_primitive(const IntVector& v);
/// Smallest integer vector positively proportional to v.
IntVector primitive_integer(const RationalVector& v);

RationalVector to_rational(const IntVector& v);
bool is_zero(const IntVector& v);
bool is_zero(const RationalVector& v);
Integer dot(const IntVector& a, const IntVector& b);
Rational dot(const RationalVector& a, const RationalVector& b);
Rational dot(const RationalVector& a, const IntVector& b);

std::string to_string(const IntVector& v);
std::string to_string(const RationalVector& v);

}  // namespace toricmmp
