#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pwlbif/core_maps.hpp"
#include "pwlbif/homoclinic_params.hpp"
#include "pwlbif/one_d_map.hpp"

namespace pwlbif {

/// One application of the first-return map F to the third quadrant:
/// end = f_R^r(f_L^ell(start)).
struct ReturnRecord {
    PlanarPoint start;
    PlanarPoint end;
    int ell = 0;
    int r = 0;
    /// b(start), b(end); NaN when the parameters are outside Xi.
    double z = 0.0;
    double z_prime = 0.0;
};

enum class ReturnStatus { Returned, Diverged, Budget };

struct ReturnResult {
    ReturnStatus status = ReturnStatus::Budget;
    ReturnRecord record;  // meaningful only when status == Returned
    std::size_t steps = 0;

    [[nodiscard]] bool returned() const noexcept { return status == ReturnStatus::Returned; }
};

inline constexpr std::size_t kDefaultReturnBudget = 1'000'000;

/// Iterates p in Q3 until the orbit is back in Q3. Points of Q3 go left until
/// they cross the switching line, then right until they re-enter Q3, so the
/// split into ell >= 1 and r >= 1 is read off the sides visited.
/// Throws DomainError unless in_Q3(p), delta_L >= 0 and delta_R > 0.
[[nodiscard]] ReturnResult first_return(const NormalFormParams& params, PlanarPoint p,
                                        std::size_t max_steps = kDefaultReturnBudget,
                                        double escape_radius = kDefaultEscapeRadius);

struct Psi0Stats {
    double epsilon = 0.0;
    /// 1 - area(Psi0) / area(Psi), estimated by the accepted-sample fraction.
    double fraction_outside = 0.0;
    /// max |z' - h(z)| over samples in Psi0.
    double sup_error = 0.0;
    double c = 0.0;
    std::size_t n_psi = 0;
    std::size_t n_psi0 = 0;
    std::size_t n_diverged = 0;
    std::size_t n_budget = 0;
};

struct PsiSampleOptions {
    std::size_t n_samples = 100'000;
    std::uint64_t seed = 0;
    int n_workers = 1;
    std::size_t max_steps = kDefaultReturnBudget;
};

/// Monte-Carlo estimate over Psi = {P in Q3 : 0 < b(P) < 2 eps}: uniform points
/// of an (a, b) box around the strip, rejected unless in Q3. A sample is in
/// Psi0 when it returns with r = m and sigma^ell b in [1, sigma).
/// rp must carry m (reduced_params_generic sets it). Throws DomainError if
/// eps == 0. The result does not depend on n_workers.
[[nodiscard]] Psi0Stats sample_psi(const NormalFormParams& params, const ReducedParams& rp,
                                   const PsiSampleOptions& opts = {});

/// Calls visit(result, in_psi0) for every sample of the same stream
/// as sample_psi (single-threaded). Used by tests and plots.
template <class Visit>
void for_each_psi_sample(const NormalFormParams& params, const ReducedParams& rp, const PsiSampleOptions& opts,
                         Visit&& visit);

/// Least-squares slope of y against x.
[[nodiscard]] double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingReport {
    std::vector<NormalFormParams> ray;
    std::vector<Psi0Stats> stats;
    double c_expected = 0.0;
    /// Absent when lambda == 0 (then the error vanishes identically).
    std::optional<double> sup_error_slope;
    std::optional<double> fraction_slope;
    double max_sup_error = 0.0;

    [[nodiscard]] bool sup_ok(double tol = 0.15) const;
    [[nodiscard]] bool fraction_ok(double min_slope = 0.85) const;
};

/// Samples Psi at each ray point (eps decreasing) and fits log-log slopes of
/// sup_error and fraction_outside against eps. c_expected is computed at
/// `limit`, the codimension-two point. Needs at least five ray points.
[[nodiscard]] ScalingReport verify_theorem1_scaling(const std::vector<NormalFormParams>& ray,
                                                    const NormalFormParams& limit, int m,
                                                    const PsiSampleOptions& opts = {});

/// Points limit + t_j * direction with eps(t_j) = eps0 * ratio^j (0 < ratio < 1),
/// found by bisection in t. `direction` is given in the two named coordinates.
[[nodiscard]] std::vector<NormalFormParams> geometric_ray(const NormalFormParams& limit,
                                                          std::pair<ParamName, ParamName> coords,
                                                          std::pair<double, double> direction, int m, double eps0,
                                                          double ratio, int n_points);

}  // namespace pwlbif

#include "pwlbif/detail/psi_sampling.hpp"
