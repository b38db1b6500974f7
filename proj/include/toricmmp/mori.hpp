#pragma once

// The Mori cone of a complete simplicial fan: generators, extremal rays and
// faces, contraction type by sign pattern, and the fan-level contractions
// and flips.

#include "toricmmp/intersection.hpp"
#include "toricmmp/polyhedral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace toricmmp {

enum class ContractionKind { fiber, divisorial, small };
std::string to_string(ContractionKind k);

struct ExtremalRay {
    IntVector generator;             ///< primitive wall relation
    std::vector<std::size_t> walls;  ///< indices into walls(f) with this relation
    ContractionKind kind = ContractionKind::fiber;
    int k_degree_sign = 0;           ///< sign of -K . generator
};

struct ContractionInfo {
    ContractionKind kind = ContractionKind::fiber;
    // divisorial
    std::size_t removed_ray = 0;
    Cone center;  ///< positive support of the relation
    bool smooth_codim2 = false;
    // fiber
    std::vector<IntVector> kernel_basis;
    IntMatrix quotient;
    // small
    Cone j_plus, j_minus;
};

struct ContractionResult {
    Fan target;
    IntMatrix lattice_map;  ///< target.dim x source.dim
    /// Per source ray: the target ray its image spans, if the image is a ray.
    std::vector<std::optional<std::size_t>> ray_image;
};

/// Distinct wall classes, sorted.
std::vector<IntVector> mori_generators(const Fan& f);
/// Extreme rays of the cone spanned by the wall classes, sorted by generator.
std::vector<ExtremalRay> extremal_rays(const Fan& f);
/// Builds the ExtremalRay record for a wall class (no extremality check).
ExtremalRay ray_of_class(const Fan& f, const IntVector& generator);

ContractionInfo classify_contraction(const Fan& f, const ExtremalRay& r);
ContractionResult contract(const Fan& f, const ExtremalRay& r);
Fan flip(const Fan& f, const ExtremalRay& r);

/// Faces of the Mori cone of the given codimension, as index sets into
/// mori_generators(f).
std::vector<ConeFace> mori_faces(const Fan& f, std::size_t codim);

}  // namespace toricmmp
