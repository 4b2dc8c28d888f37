#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pwlbif/core_maps.hpp"
#include "pwlbif/cycle_solver.hpp"
#include "pwlbif/one_d_map.hpp"

namespace pwlbif {

struct AttractorClass {
    enum class Kind { Periodic, Chaotic, Divergent, Undetermined };

    Kind kind = Kind::Undetermined;
    int period = 0;                      // Periodic
    std::optional<Itinerary> itinerary;  // Periodic orbits of the planar map
    std::vector<int> branches;           // Periodic orbits of h: branch index per point
    int bands = 0;                       // Chaotic

    [[nodiscard]] static AttractorClass periodic(int period) { return {Kind::Periodic, period, {}, {}, 0}; }
    [[nodiscard]] static AttractorClass chaotic(int bands) { return {Kind::Chaotic, 0, {}, {}, bands}; }
    [[nodiscard]] static AttractorClass divergent() { return {Kind::Divergent, 0, {}, {}, 0}; }
    [[nodiscard]] static AttractorClass undetermined() { return {}; }

    /// "periodic", "chaotic", "divergent", "undetermined".
    [[nodiscard]] std::string tag() const;
    /// Short region label: "P10", "C2", "D", "U".
    [[nodiscard]] std::string label() const;
    /// Same tag and same period or band count.
    [[nodiscard]] bool same_class(const AttractorClass& other) const noexcept;
};

struct GcdConfig {
    double epsilon = 1e-4;
    std::size_t n_refs = 2000;
    std::size_t orbit_len = 200'000;
    std::size_t burn_in = 10'000;
};

struct GcdResult {
    int bands = 1;
    /// Number of index differences that entered the gcd.
    std::size_t n_differences = 0;
};

/// Reference points are spread over the first half of the orbit after
/// burn_in; every later point within epsilon (Euclidean) of a reference
/// contributes its index difference. gcd of all differences, 1 if none.
[[nodiscard]] GcdResult eckstein_gcd_detailed(std::span<const PlanarPoint> orbit, const GcdConfig& cfg);
[[nodiscard]] int eckstein_gcd(std::span<const PlanarPoint> orbit, const GcdConfig& cfg);

struct Budgets2D {
    OrbitBudget period;  // burn-in, q_max, recurrence tolerance, escape radius
    GcdConfig gcd;
};

/// Divergent on escape, Periodic on point recurrence after the burn-in,
/// otherwise Chaotic with the Eckstein band count. Undetermined when the orbit
/// never comes back near any reference point.
[[nodiscard]] AttractorClass classify_2d(const NormalFormParams& params, PlanarPoint p0, const Budgets2D& budgets = {});

struct BoxCountConfig {
    int n_boxes = 1000;
    std::size_t orbit_len = 1'000'000;
    std::size_t burn_in = 10'000;
};

/// Number of maximal runs of visited boxes among n_boxes equal boxes over J.
/// Starts at the midpoint of J unless z0 is given. Requires eta, nu > 0.
[[nodiscard]] int boxcount_bands_1d(const ReducedParams& rp, const BoxCountConfig& cfg = {},
                                    std::optional<double> z0 = std::nullopt);

struct Budgets1D {
    std::size_t burn_in = 10'000;
    int q_max = 200;
    /// Relative to max(|eta|, |nu|).
    double tolerance = 1e-9;
    BoxCountConfig boxes;
    /// When above boxes.orbit_len, a count above one is re-checked with orbits
    /// four times longer (up to this length) until two counts agree. Short
    /// orbits leave spurious gaps where the invariant density is low.
    std::size_t confirm_len = 0;
};

/// Divergent unless eta, nu > 0 (no absorbing interval). Periodic by point
/// recurrence, otherwise Chaotic with the box-count band number.
[[nodiscard]] AttractorClass classify_1d(const ReducedParams& rp, const Budgets1D& budgets = {},
                                         std::optional<double> z0 = std::nullopt);

/// Periodic orbit of h reached from z0 after burn_in steps, if any.
struct Periodic1D {
    int period = 0;
    std::vector<double> points;
    std::vector<int> branches;
};
[[nodiscard]] std::optional<Periodic1D> detect_period_1d(const OneDMap& h, double z0, std::size_t burn_in, int q_max,
                                                         double tolerance);

struct RotationConfig {
    std::size_t n_iter = 100'000;
    std::size_t burn_in = 10'000;
    int q_max = 200;
    double agreement = 1e-4;
};

struct RotationResult {
    double rho = 0.0;
    /// (u, q) when the orbit is periodic with period q and u points in I_k.
    std::optional<std::pair<int, int>> rational;
    /// False when the two half-length estimates disagree by more than the
    /// configured tolerance.
    bool resolved = true;
    /// Upper branch index k (J meets I_k and I_{k+1}).
    int k = 0;
};

/// Visit frequency of I_k. Throws PreconditionError unless N = 2, eta > nu and
/// Delta < 0.
[[nodiscard]] RotationResult rotation_number(const ReducedParams& rp, const RotationConfig& cfg = {});

enum class Endpoint { Eta, Nu };

struct MergingHit {
    int j = 0;
    Endpoint endpoint = Endpoint::Eta;
    int target_k = 0;
    double distance = 0.0;
};

/// Iterates eta and nu forward j = 1..j_max times and reports, for each
/// endpoint and each unstable admissible fixed point z_k* in J's branch range,
/// the first j with |h^j(endpoint) - z_k*| <= tol. Requires eta, nu > 0.
[[nodiscard]] std::vector<MergingHit> merging_condition_scan(const ReducedParams& rp, int j_max, double tol);

}  // namespace pwlbif
