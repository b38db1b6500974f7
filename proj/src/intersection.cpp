#include "toricmmp/intersection.hpp"

#include <stdexcept>

namespace toricmmp {

IntVector IntersectionSpace::coordinates(const IntVector& cls) const {
    IntVector out;
    out.reserve(pivots.size());
    for (auto p : pivots) out.push_back(cls.at(p));
    return out;
}

IntersectionSpace intersection_space(const Fan& f) {
    IntersectionSpace s;
    s.basis = integer_kernel_basis(f.ray_matrix());
    if (f.dim == 0) s.basis.clear();
    s.rho = s.basis.size();
    for (const auto& b : s.basis) {
        std::size_t p = 0;
        while (b[p] == 0) ++p;
        s.pivots.push_back(p);
    }
    return s;
}

CurveClass wall_class(const Fan&, const std::vector<Wall>& ws, std::size_t wall_index) {
    return CurveClass{ws.at(wall_index).relation, wall_index};
}

std::vector<CurveClass> wall_classes(const Fan& f) {
    const auto ws = walls(f);
    std::vector<CurveClass> out;
    for (std::size_t i = 0; i < ws.size(); ++i) out.push_back(wall_class(f, ws, i));
    return out;
}

DivisorClass anticanonical(const Fan& f) { return DivisorClass{RationalVector(f.num_rays(), Rational(1))}; }

DivisorClass prime_divisor(const Fan& f, std::size_t ray) {
    DivisorClass d{RationalVector(f.num_rays(), Rational(0))};
    d.coefficients.at(ray) = 1;
    return d;
}

DivisorClass divisor_from(const IntVector& coefficients) { return DivisorClass{to_rational(coefficients)}; }

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
    if (a.coefficients.size() != b.coefficients.size()) throw std::invalid_argument("divisor size mismatch");
    DivisorClass out = a;
    for (std::size_t i = 0; i < out.coefficients.size(); ++i) out.coefficients[i] += b.coefficients[i];
    return out;
}

DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
    if (a.coefficients.size() != b.coefficients.size()) throw std::invalid_argument("divisor size mismatch");
    DivisorClass out = a;
    for (std::size_t i = 0; i < out.coefficients.size(); ++i) out.coefficients[i] -= b.coefficients[i];
    return out;
}

Rational pair(const DivisorClass& d, const IntVector& c) {
    if (d.coefficients.size() != c.size()) throw std::invalid_argument("pair: size mismatch");
    return dot(d.coefficients, c);
}

Rational pair(const DivisorClass& d, const CurveClass& c) { return pair(d, c.coefficients); }

Integer anticanonical_degree(const IntVector& c) {
    Integer s = 0;
    for (const auto& x : c) s += x;
    return s;
}

std::vector<Rational> wall_degrees(const Fan& f, const DivisorClass& d) {
    std::vector<Rational> out;
    for (const auto& w : walls(f)) out.push_back(pair(d, w.relation));
    return out;
}

bool is_nef(const Fan& f, const DivisorClass& d, bool strict) {
    for (const auto& x : wall_degrees(f, d))
        if (strict ? x <= 0 : x < 0) return false;
    return true;
}

bool linearly_equivalent(const Fan& f, const DivisorClass& a, const DivisorClass& b) {
    const DivisorClass diff = a - b;
    std::vector<RationalVector> rows;
    for (std::size_t r = 0; r < f.dim; ++r) {
        RationalVector row;
        for (const auto& v : f.rays) row.push_back(v[r]);
        rows.push_back(row);
    }
    return in_span(rows, diff.coefficients);
}

}  // namespace toricmmp
