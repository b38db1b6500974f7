#pragma once

// Curve and divisor classes on a complete simplicial fan and their pairing.
// Curve classes are relations among the rays (elements of the kernel of the
// ray matrix); divisors are vectors indexed by rays, modulo characters.

#include "toricmmp/fan.hpp"

#include <optional>
#include <vector>

namespace toricmmp {

struct CurveClass {
    IntVector coefficients;
    std::optional<std::size_t> wall;  ///< index into walls(f) when it is a wall curve
    bool operator==(const CurveClass& o) const { return coefficients == o.coefficients; }
};

struct DivisorClass {
    RationalVector coefficients;
};

struct IntersectionSpace {
    std::vector<IntVector> basis;     ///< Hermite-reduced basis of the curve lattice
    std::vector<std::size_t> pivots;  ///< pivot column of each basis row
    std::size_t rho = 0;

    /// Coordinates of a class in Z^rho (restriction to pivot columns); this is
    /// injective on the curve lattice.
    IntVector coordinates(const IntVector& cls) const;
};

IntersectionSpace intersection_space(const Fan& f);

CurveClass wall_class(const Fan& f, const std::vector<Wall>& ws, std::size_t wall_index);
std::vector<CurveClass> wall_classes(const Fan& f);

DivisorClass anticanonical(const Fan& f);
DivisorClass prime_divisor(const Fan& f, std::size_t ray);
DivisorClass divisor_from(const IntVector& coefficients);
DivisorClass operator+(const DivisorClass& a, const DivisorClass& b);
DivisorClass operator-(const DivisorClass& a, const DivisorClass& b);

Rational pair(const DivisorClass& d, const CurveClass& c);
Rational pair(const DivisorClass& d, const IntVector& c);
/// Anticanonical degree: sum of the coefficients.
Integer anticanonical_degree(const IntVector& c);

/// Pairing of D with every wall class, in walls(f) order.
std::vector<Rational> wall_degrees(const Fan& f, const DivisorClass& d);
bool is_nef(const Fan& f, const DivisorClass& d, bool strict);

/// True iff a - b is the divisor of a character (lies in the ray-matrix row space).
bool linearly_equivalent(const Fan& f, const DivisorClass& a, const DivisorClass& b);

}  // namespace toricmmp
