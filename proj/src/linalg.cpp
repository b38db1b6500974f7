#include "toricmmp/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace toricmmp {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer abs_value(const Integer& a) { return a < 0 ? Integer(-a) : a; }

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<RationalVector>& rows, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t pr = 0;
    for (std::size_t c = 0; c < cols && pr < rows.size(); ++c) {
        std::size_t sel = pr;
        while (sel < rows.size() && rows[sel][c] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[pr], rows[sel]);
        const Rational inv = 1 / rows[pr][c];
        for (std::size_t k = c; k < cols; ++k) rows[pr][k] *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == pr || rows[i][c] == 0) continue;
            const Rational f = rows[i][c];
            for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[pr][k];
        }
        pivots.push_back(c);
        ++pr;
    }
    return pivots;
}

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    const std::size_t c = rows.empty() ? cols : rows.front().size();
    IntMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("from_rows: ragged rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t rows) {
    const std::size_t r = columns.empty() ? rows : columns.front().size();
    IntMatrix m(r, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != r) throw std::invalid_argument("from_columns: ragged columns");
        for (std::size_t i = 0; i < r; ++i) m(i, j) = columns[j][i];
    }
    return m;
}

IntVector IntMatrix::row(std::size_t r) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
    IntVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
    return v;
}

std::vector<IntVector> IntMatrix::row_list() const {
    std::vector<IntVector> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntVector IntMatrix::operator*(const IntVector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
    IntVector y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Integer s = 0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product size mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) os << ", ";
        os << to_string(m.row(i));
    }
    return os << ']';
}

SmithForm smith_normal_form(const IntMatrix& m) {
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(m.rows());
    IntMatrix v = IntMatrix::identity(m.cols());
    const std::size_t r = m.rows();
    const std::size_t c = m.cols();
    for (std::size_t t = 0; t < std::min(r, c); ++t) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        bool found = false;
        std::size_t pi = t, pj = t;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j)
                if (a(i, j) != 0 && (!found || abs_value(a(i, j)) < abs_value(a(pi, pj)))) {
                    found = true;
                    pi = i;
                    pj = j;
                }
        if (!found) break;
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (a(i, t) == 0) continue;
                const Integer q = floor_div(a(i, t), a(t, t));
                a.add_row_multiple(i, t, -q);
                u.add_row_multiple(i, t, -q);
                if (a(i, t) != 0) {
                    a.swap_rows(i, t);
                    u.swap_rows(i, t);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (a(t, j) == 0) continue;
                const Integer q = floor_div(a(t, j), a(t, t));
                a.add_col_multiple(j, t, -q);
                v.add_col_multiple(j, t, -q);
                if (a(t, j) != 0) {
                    a.swap_cols(j, t);
                    v.swap_cols(j, t);
                    clean = false;
                }
            }
            if (!clean) continue;
            bool divisible = true;
            for (std::size_t i = t + 1; i < r && divisible; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        a.add_row_multiple(t, i, 1);
                        u.add_row_multiple(t, i, 1);
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (a(t, t) < 0) {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    return SmithForm{std::move(u), std::move(a), std::move(v)};
}

IntMatrix row_hermite_form(const IntMatrix& m) {
    IntMatrix a = m;
    const std::size_t r = a.rows();
    const std::size_t c = a.cols();
    std::size_t pr = 0;
    for (std::size_t j = 0; j < c && pr < r; ++j) {
        for (;;) {
            std::size_t best = r;
            for (std::size_t i = pr; i < r; ++i)
                if (a(i, j) != 0 && (best == r || abs_value(a(i, j)) < abs_value(a(best, j)))) best = i;
            if (best == r) break;
            a.swap_rows(pr, best);
            bool reduced = true;
            for (std::size_t i = pr + 1; i < r; ++i) {
                if (a(i, j) == 0) continue;
                a.add_row_multiple(i, pr, -floor_div(a(i, j), a(pr, j)));
                if (a(i, j) != 0) reduced = false;
            }
            if (reduced) break;
        }
        if (a(pr, j) == 0) continue;
        if (a(pr, j) < 0) a.negate_row(pr);
        for (std::size_t i = 0; i < pr; ++i) a.add_row_multiple(i, pr, -floor_div(a(i, j), a(pr, j)));
        ++pr;
    }
    IntMatrix out(pr, c);
    for (std::size_t i = 0; i < pr; ++i)
        for (std::size_t j = 0; j < c; ++j) out(i, j) = a(i, j);
    return out;
}

std::vector<IntVector> integer_kernel_basis(const IntMatrix& m) {
    const std::size_t r = m.rows();
    const std::size_t c = m.cols();
    // Row-reduce [M^T | I] using only the M^T block for pivots; rows whose
    // M^T block vanishes carry a unimodular-complete kernel basis.
    IntMatrix aug(c, r + c);
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = 0; j < r; ++j) aug(i, j) = m(j, i);
        aug(i, r + i) = 1;
    }
    std::size_t pr = 0;
    for (std::size_t j = 0; j < r && pr < c; ++j) {
        for (;;) {
            std::size_t best = c;
            for (std::size_t i = pr; i < c; ++i)
                if (aug(i, j) != 0 && (best == c || abs_value(aug(i, j)) < abs_value(aug(best, j)))) best = i;
            if (best == c) break;
            aug.swap_rows(pr, best);
            bool reduced = true;
            for (std::size_t i = pr + 1; i < c; ++i) {
                if (aug(i, j) == 0) continue;
                aug.add_row_multiple(i, pr, -floor_div(aug(i, j), aug(pr, j)));
                if (aug(i, j) != 0) reduced = false;
            }
            if (reduced) break;
        }
        if (aug(pr, j) != 0) ++pr;
    }
    std::vector<IntVector> basis;
    for (std::size_t i = pr; i < c; ++i) {
        IntVector k(c);
        for (std::size_t j = 0; j < c; ++j) k[j] = aug(i, r + j);
        basis.push_back(std::move(k));
    }
    if (basis.empty()) return basis;
    return row_hermite_form(IntMatrix::from_rows(basis)).row_list();
}

std::vector<IntVector> saturated_span_basis(const std::vector<IntVector>& vectors, std::size_t n) {
    if (vectors.empty()) return {};
    const auto orth = integer_kernel_basis(IntMatrix::from_rows(vectors, n));
    return integer_kernel_basis(IntMatrix::from_rows(orth, n));
}

IntMatrix quotient_map(const std::vector<IntVector>& subspace, std::size_t n) {
    if (subspace.empty()) return IntMatrix::identity(n);
    return IntMatrix::from_rows(integer_kernel_basis(IntMatrix::from_rows(subspace, n)), n);
}

std::size_t rank(const std::vector<RationalVector>& vectors) {
    if (vectors.empty()) return 0;
    auto rows = vectors;
    const std::size_t cols = rows.front().size();
    for (const auto& v : rows)
        if (v.size() != cols) throw std::invalid_argument("rank: vectors of different length");
    return rref(rows, cols).size();
}

std::size_t rank(const std::vector<IntVector>& vectors) {
    std::vector<RationalVector> rows;
    rows.reserve(vectors.size());
    for (const auto& v : vectors) rows.push_back(to_rational(v));
    return rank(rows);
}

std::size_t rank(const IntMatrix& m) { return rank(m.row_list()); }

bool in_span(const std::vector<RationalVector>& vectors, const RationalVector& v) {
    if (is_zero(v)) return true;
    if (vectors.empty()) return false;
    auto extended = vectors;
    extended.push_back(v);
    return rank(extended) == rank(vectors);
}

bool in_span(const std::vector<IntVector>& vectors, const IntVector& v) {
    std::vector<RationalVector> rows;
    rows.reserve(vectors.size());
    for (const auto& w : vectors) rows.push_back(to_rational(w));
    return in_span(rows, to_rational(v));
}

Integer determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && a(s, k) == 0) ++s;
            if (s == n) return 0;
            a.swap_rows(k, s);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = t;
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

std::optional<RationalVector> solve(const std::vector<RationalVector>& a_rows, const RationalVector& b) {
    if (a_rows.size() != b.size()) throw std::invalid_argument("solve: row count mismatch");
    if (a_rows.empty()) return RationalVector{};
    const std::size_t n = a_rows.front().size();
    std::vector<RationalVector> aug;
    aug.reserve(a_rows.size());
    for (std::size_t i = 0; i < a_rows.size(); ++i) {
        RationalVector row = a_rows[i];
        row.push_back(b[i]);
        aug.push_back(std::move(row));
    }
    const auto pivots = rref(aug, n + 1);
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;
    RationalVector x(n, Rational(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][n];
    return x;
}

RationalVector solve_square(const IntMatrix& a, const IntVector& b) {
    if (a.rows() != a.cols()) throw std::invalid_argument("solve_square: non-square");
    std::vector<RationalVector> rows;
    for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(to_rational(a.row(i)));
    auto x = solve(rows, to_rational(b));
    if (!x || rank(rows) != a.rows()) throw std::invalid_argument("solve_square: singular system");
    return *x;
}

std::vector<RationalVector> rational_kernel(const std::vector<RationalVector>& a_rows, std::size_t cols) {
    auto rows = a_rows;
    const auto pivots = rref(rows, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<RationalVector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RationalVector x(cols, Rational(0));
        x[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -rows[i][f];
        basis.push_back(std::move(x));
    }
    return basis;
}

Integer vector_gcd(const IntVector& v) {
    Integer g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

IntVector primitive(IntVector v) {
    const Integer g = vector_gcd(v);
    if (g == 0 || g == 1) return v;
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return v;
}

bool is_primitive(const IntVector& v) { return vector_gcd(v) == 1; }

IntVector primitive_integer(const RationalVector& v) {
    Integer l = 1;
    for (const auto& x : v) l = lcm(l, Integer(x.get_den()));
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rational s = v[i] * l;
        out[i] = s.get_num();
    }
    return primitive(std::move(out));
}

RationalVector to_rational(const IntVector& v) {
    RationalVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
    return out;
}

bool is_zero(const IntVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

bool is_zero(const RationalVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Integer dot(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(const RationalVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::string to_string(const IntVector& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << ')';
    return os.str();
}

std::string to_string(const RationalVector& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << ')';
    return os.str();
}

}  // namespace toricmmp
