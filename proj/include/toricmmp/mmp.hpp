#pragma once

// Special MMPs for -D on a smooth complete Fano fan, where D is an invariant
// prime divisor. Divisors are tracked by ray label; every fan along a run has
// a subset of the labels of the input fan, so label-indexed data can always
// be zero-extended back to X.

#include "toricmmp/lefschetz.hpp"
#include "toricmmp/mori.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricmmp {

class MmpError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using LabelSet = std::vector<int>;  ///< sorted ray labels

enum class MmpStrategy { first, all };

struct MmpStep {
    std::size_t index = 0;  ///< 1-based: the step X_i --> X_{i+1}
    Fan before, after;
    ExtremalRay ray;
    ContractionKind kind = ContractionKind::divisorial;
    int d_label = 0;
    bool special = false;  ///< generator outside N_1(D_i, X_i)
    Integer d_degree;      ///< D_i . R_i
    Integer k_degree;      ///< -K . R_i
    std::size_t c_before = 0;  ///< c(D_i) on X_i
    bool terminal_after = false;
    // divisorial
    int removed_label = 0;
    LabelSet center;  ///< labels of the positive support
    bool smooth_codim2 = false;
    // flip
    LabelSet j_plus, j_minus;
};

enum class RunType { a, b };
std::string to_string(RunType t);

struct MmpRun {
    Fan x;  ///< the input fan
    int d_label = 0;
    std::vector<MmpStep> steps;  ///< the birational steps; k = steps.size() + 1
    Fan x_k;
    ExtremalRay fiber_ray;  ///< R_k on X_k
    Integer fiber_d_degree;
    Integer fiber_k_degree;
    ContractionResult fiber;  ///< phi: X_k -> Y
    /// Cones created by flips, as label sets, over the whole run.
    std::vector<LabelSet> flip_debris;

    std::size_t k() const { return steps.size() + 1; }
    const Fan& y() const { return fiber.target; }
};

struct RunClassification {
    RunType type = RunType::a;
    std::size_t c_d = 0;    ///< c(D) on X
    std::size_t c_dk = 0;   ///< c(D_k) on X_k
    std::vector<std::size_t> special_indices;  ///< 1-based step indices
};

/// Runs special MMPs for -D where D is the divisor of ray index `d_ray`.
/// strategy=first returns a single run; strategy=all returns every run,
/// sorted by their sequence of chosen generators. step_bound = 0 means
/// 10 * rho.
std::vector<MmpRun> special_mmp(const Fan& f, std::size_t d_ray, MmpStrategy strategy, std::size_t step_bound = 0);

/// Throws MmpError when c(D_k) is not 0 or 1, or when c(D) < 1.
RunClassification classify_run(const MmpRun& run);

/// A one-cycle as a combination of wall curves. In a fan F its class is the
/// sum of coefficient times the primitive relation of the wall with that
/// ridge; the coefficients absorb the lattice multiplicities.
struct CycleTerm {
    LabelSet ridge;
    Rational coefficient;
};
using OneCycle = std::vector<CycleTerm>;

/// Fan X_i of a run, 1 <= i <= k.
const Fan& run_fan(const MmpRun& run, std::size_t i);
/// Class of a cycle in a fan, as a rational vector indexed by the fan's rays.
/// Throws MmpError if some ridge is not a wall of the fan.
RationalVector cycle_class(const Fan& f, const OneCycle& cycle);
/// Transform from X_from to X_to (from <= to). nullopt when some component
/// lies in the indeterminacy locus of a flip along the way.
std::optional<OneCycle> transform_class(const MmpRun& run, const OneCycle& cycle, std::size_t from_step,
                                        std::size_t to_step);

/// Zero-extends a vector indexed by the rays of `from` to the rays of `to`
/// by matching labels; labels missing in `to` must carry zero.
RationalVector extend_by_label(const Fan& from, const RationalVector& v, const Fan& to);
IntVector extend_by_label(const Fan& from, const IntVector& v, const Fan& to);

/// Relation of the wall of `f` with the given ridge labels, if it is a wall.
std::optional<IntVector> wall_relation_by_labels(const Fan& f, const LabelSet& ridge);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string witness;
};

struct TypeBReport {
    std::size_t i1 = 0;
    int e_label = 0, e_hat_label = 0;
    IntVector e, e_hat, ell;  ///< classes in X
    LabelSet a_cone;          ///< A as a cone of X_k
    std::size_t z_ray = 0;    ///< Z as a ray index of Y
    Integer e_dot_e_hat, e_hat_dot_e, e_dot_ell, e_hat_dot_ell;
    bool ell_is_sum = false;
    bool xk_smooth = false, y_smooth = false;
    bool conic_bundle_smooth = false;
    std::vector<LabelSet> discriminant_walls;  ///< contracted walls of -K-degree 1 in X_k
    std::vector<CheckResult> checks;

    bool all_pass() const;
};

/// Type (b) package. Throws MmpError if the run is not of type (b) or the
/// package cannot be located; failed identities are reported in `checks`.
TypeBReport type_b_structure(const MmpRun& run, const RunClassification& cls);

struct TypeAReport {
    std::size_t i1 = 0, i2 = 0;
    int e1_label = 0, e2_label = 0;
    IntVector e1, e2;
    std::vector<CheckResult> checks;

    bool all_pass() const;
};

/// Type (a) structure for runs with c(D) = c_X = 2.
TypeAReport type_a_structure(const MmpRun& run, const RunClassification& cls);

/// Per-step checks: D_i . R_i > 0, -K . R_i > 0, terminal intermediate fans,
/// the fiber assertion phi(D_k) = Y and c(D_{i+1}) = c(D_i) - [special].
std::vector<CheckResult> step_invariants(const MmpRun& run);

/// Exceptional P^1-bundle certificate for the ray `e_ray` of a smooth fan
/// with fiber class `e`: E.e = -1 and the star fan is a P^1-bundle fan.
bool is_exceptional_p1_bundle(const Fan& f, std::size_t e_ray, const IntVector& e);

/// span N_1(E) = span({e} u N_1(D n E)) for a pair with D.e > 0.
bool elementary_span_identity(const Fan& f, std::size_t e_ray, std::size_t d_ray, const IntVector& e);

struct FlipsPropertyResult {
    std::size_t samples = 0;
    std::size_t checked = 0;    ///< (sample, step) pairs tested
    std::size_t undefined = 0;  ///< samples stopped by indeterminacy
    std::size_t failures = 0;
    std::string first_failure;
};

/// Random nonnegative combinations of walls inside G or D for random rays G,
/// transported along the run and tested for membership in
/// N_1(G_i, X_i) + N_1(D_i, X_i).
FlipsPropertyResult check_flips_property(const MmpRun& run, std::size_t samples, std::uint32_t seed);

}  // namespace toricmmp
