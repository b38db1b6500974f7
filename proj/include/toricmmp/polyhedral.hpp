#pragma once

// Exact polyhedral cone computations over Q: conic feasibility via a
// Bland-rule simplex, facet enumeration via the double description method,
// and face enumeration on top of the facet list.

#include "toricmmp/linalg.hpp"

#include <cstddef>
#include <vector>

namespace toricmmp {

/// True iff v = sum_j lambda_j * gens[j] for some lambda >= 0.
bool in_cone(const std::vector<RationalVector>& gens, const RationalVector& v);
bool in_cone(const std::vector<IntVector>& gens, const IntVector& v);

/// Inward facet normals a (a . g >= 0 for all generators) of the cone spanned
/// by `gens`, which must span Q^dim. Normals are primitive and sorted.
std::vector<IntVector> cone_facets(const std::vector<IntVector>& gens, std::size_t dim);

struct ConeFace {
    std::vector<std::size_t> generators;  ///< indices into the generator list
    std::size_t dimension = 0;
    auto operator<=>(const ConeFace&) const = default;
};

/// All faces of the given dimension of cone(gens) (gens spanning Q^dim).
/// Dimension 0 yields the apex as a face with no generators.
std::vector<ConeFace> cone_faces(const std::vector<IntVector>& gens, std::size_t dim, std::size_t face_dim);

}  // namespace toricmmp
