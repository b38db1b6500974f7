#pragma once

// Reference computations used only by the test suite. They are written
// independently of the library algorithms they check.

#include "toricmmp/linalg.hpp"

#include <vector>

namespace oracle {

using toricmmp::Integer;
using toricmmp::IntVector;

/// Rank by fraction-free (Bareiss) elimination on a copy of the rows.
inline std::size_t bareiss_rank(std::vector<IntVector> a) {
    if (a.empty()) return 0;
    const std::size_t m = a.size(), n = a[0].size();
    std::size_t r = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && a[p][c] == 0) ++p;
        if (p == m) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < m; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

/// Determinant by cofactor expansion (small matrices only).
inline Integer cofactor_det(const std::vector<IntVector>& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    Integer d = 0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<IntVector> minor;
        for (std::size_t i = 1; i < n; ++i) {
            IntVector row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(a[i][k]);
            minor.push_back(row);
        }
        Integer term = a[0][j] * cofactor_det(minor);
        d += (j % 2 == 0) ? term : Integer(-term);
    }
    return d;
}

inline IntVector iv(std::initializer_list<long> xs) {
    IntVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

}  // namespace oracle
