#pragma once

// N_1(D, X) for invariant prime divisors, c(D) = codim N_1(D, X) and the
// maximum c_X, plus an independent computation of c(D) as the kernel of
// restriction N^1(X) -> N^1(D).

#include "toricmmp/intersection.hpp"

#include <vector>

namespace toricmmp {

struct LefschetzReport {
    std::size_t rho = 0;
    std::vector<std::size_t> c_values;  ///< per ray
    std::size_t c_x = 0;                ///< maximum over invariant prime divisors
    std::vector<std::size_t> argmax;    ///< rays attaining c_x
    std::vector<std::vector<IntVector>> span_bases;  ///< per ray, a basis of N_1(D_v, X)
    bool fano = true;                   ///< false means the input was not Fano
};

/// Wall classes of all walls whose ridge contains `ray`.
std::vector<IntVector> n1_span_of_divisor(const Fan& f, std::size_t ray);
std::size_t c_of_divisor(const Fan& f, std::size_t ray);
LefschetzReport lefschetz_defect(const Fan& f);
/// Parallel variant of lefschetz_defect (per-ray OpenMP loop).
LefschetzReport lefschetz_defect_parallel(const Fan& f);

std::size_t restriction_kernel_oracle(const Fan& f, std::size_t ray);

/// Wall classes of walls whose ridge contains both rays.
std::vector<IntVector> span_of_pair_intersection(const Fan& f, std::size_t v, std::size_t w);

/// A linearly independent subset spanning the same space (first-come order).
std::vector<IntVector> independent_subset(const std::vector<IntVector>& vectors);

}  // namespace toricmmp
