#pragma once

// Per-variety verification of the structure results for smooth toric Fano
// fans: bounds on c_X, product splitting, del Pezzo fibrations, the
// conic-bundle / del Pezzo dichotomy for c_X = 2, and the Gorenstein base.

#include "toricmmp/mmp.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace toricmmp {

enum class ClaimStatus { pass, fail, not_applicable };
std::string to_string(ClaimStatus s);

namespace claims {
inline constexpr const char* codim_bound = "codim.bound";
inline constexpr const char* codim_product = "codim.product";
inline constexpr const char* codim_dp4 = "codim.dp4";
inline constexpr const char* main_dichotomy = "main.dichotomy";
inline constexpr const char* toric_prop = "toric.prop";
inline constexpr const char* dim_smallfacts = "dim.smallfacts";
}  // namespace claims

/// All claim ids in report order.
const std::vector<std::string>& all_claim_ids();

struct ClaimResult {
    std::string claim;
    ClaimStatus status = ClaimStatus::not_applicable;
    std::string detail;
    std::vector<std::string> witnesses;  ///< fan and classes for fails
};

struct VerificationReport {
    std::string id;
    std::size_t dim = 0;
    std::size_t rho = 0;
    std::size_t c_x = 0;
    std::vector<ClaimResult> checks;
    std::map<std::string, long> counters;  ///< runs, steps, samples, ...
    double seconds = 0;

    bool any_fail() const;
    /// Appends the checks and counters of another report on the same variety.
    void merge(const VerificationReport& other);
};

struct DelPezzoFibration {
    std::vector<std::size_t> face;  ///< indices into mori_generators(f)
    IntVector supporting_divisor;   ///< nef, zero exactly on the face
    std::vector<IntVector> kernel_basis;
    IntMatrix lattice_map;
    Fan fiber;  ///< general fiber, in kernel coordinates
    Fan base;
    bool equidimensional = false;
    bool quasi_elementary = false;
    bool base_smooth = false;
    bool base_fano = false;
};

/// Every fibration onto an (n-2)-dimensional base with smooth del Pezzo
/// general fiber whose contracted face of NE(X) has dimension `rho_drop`.
std::vector<DelPezzoFibration> del_pezzo_fibrations(const Fan& f, std::size_t rho_drop);
/// The first equidimensional one, preferring quasi-elementary ones with a
/// smooth base.
std::optional<DelPezzoFibration> find_del_pezzo_fibration(const Fan& f, std::size_t rho_drop);

struct VerifyOptions {
    std::size_t step_bound = 0;       ///< 0: default of special_mmp
    std::size_t flips_samples = 100;  ///< per run; 0 disables the property check
};

VerificationReport verify_codim_theorem(const Fan& f);
VerificationReport verify_main_dichotomy(const Fan& f, const VerifyOptions& opt = {});
VerificationReport verify_toric_proposition(const Fan& f, const VerifyOptions& opt = {});
VerificationReport verify_small_dimension_facts(const Fan& f);

/// Runs the selected claims (all when `claim_ids` is empty).
VerificationReport verify_all(const Fan& f, const std::string& id, const std::vector<std::string>& claim_ids,
                              const VerifyOptions& opt = {});

/// Vertices of {m : <m, u> >= -1 for all rays u} for a complete fan.
std::vector<RationalVector> anticanonical_polytope_vertices(const Fan& f);

}  // namespace toricmmp
