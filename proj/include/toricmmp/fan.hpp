#pragma once

// Simplicial fans: validation, walls, local singularity flags and the
// surgeries used by the MMP engine (star subdivision, ray removal,
// product splitting, divisor star fans).

#include "toricmmp/linalg.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricmmp {

class FanError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Cone = std::vector<std::size_t>;  ///< sorted ray indices

/// A simplicial fan. Rays carry stable integer labels so that a ray keeps its
/// identity across surgeries; labels are unique within a fan.
struct Fan {
    std::size_t dim = 0;
    std::vector<IntVector> rays;
    std::vector<int> labels;
    std::vector<Cone> cones;  ///< maximal cones, each of size dim, sorted
    bool complete = false;

    std::size_t num_rays() const { return rays.size(); }
    /// Index of the ray with the given label, or num_rays() if absent.
    std::size_t index_of_label(int label) const;
    int max_label() const;
    /// Ray matrix with the rays as columns (dim x num_rays).
    IntMatrix ray_matrix() const;
    bool operator==(const Fan&) const = default;
};

/// Builds and validates a fan. Labels default to 1..m. Cones are sorted.
/// Throws FanError on any violated invariant; when `require_complete` is set
/// the support must be all of R^dim.
Fan make_fan(std::size_t dim, std::vector<IntVector> rays, std::vector<Cone> cones, std::vector<int> labels = {},
             bool require_complete = true);

/// The fan of a point (dimension 0, one empty cone).
Fan point_fan();

struct Wall {
    Cone ridge;               ///< dim-1 ray indices
    std::size_t side_a = 0;   ///< cone indices
    std::size_t side_b = 0;
    std::size_t opposite_a = 0;  ///< ray of side_a not in the ridge
    std::size_t opposite_b = 0;
    IntVector relation;       ///< primitive, positive on both opposite rays
};

/// One wall per pair of adjacent maximal cones, in lexicographic ridge order.
std::vector<Wall> walls(const Fan& f);

struct PropertyFlags {
    bool complete = false;
    bool simplicial = true;
    bool smooth = false;
    bool terminal = false;
    bool canonical = false;
    bool gorenstein = false;
    bool fano = false;
};

PropertyFlags local_properties(const Fan& f);

/// Absolute value of the determinant of a maximal cone's generators.
Integer cone_multiplicity(const Fan& f, const Cone& c);
bool is_smooth(const Fan& f);

/// Face fan of a full-dimensional lattice polytope with the origin in its
/// interior and simplicial facets.
Fan fan_from_polytope(const std::vector<IntVector>& vertices);

/// True iff `c` (sorted) is contained in some maximal cone.
bool is_face(const Fan& f, const Cone& c);

Fan star_subdivision(const Fan& f, Cone c);
Fan remove_ray(const Fan& f, std::size_t ray);
/// Removes `ray` by re-gluing its star along the given relation, in which
/// `ray` must be the only negative coefficient.
Fan remove_ray_along(const Fan& f, std::size_t ray, const IntVector& relation);

/// Maximal splitting into a product; factor rays are expressed in a basis of
/// the corresponding saturated sublattice. Factor labels are inherited.
std::vector<Fan> product_decompose(const Fan& f);

/// Fan of the invariant divisor of `ray` in Z^n / <v>. Labels are inherited
/// from the adjacent rays.
Fan divisor_star_fan(const Fan& f, std::size_t ray);

/// Cartesian product fan (rays of `b` placed in the trailing coordinates,
/// labels of `b` shifted past those of `a`).
Fan product(const Fan& a, const Fan& b);

/// Deterministic key: rays sorted lexicographically (with labels), cones
/// re-indexed and sorted. Equal keys mean identical labelled fans.
std::string canonical_key(const Fan& f);

std::string to_string(const Fan& f);

}  // namespace toricmmp
