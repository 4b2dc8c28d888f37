#pragma once

#include <utility>
#include <vector>

#include "pwlbif/core_maps.hpp"
#include "pwlbif/one_d_map.hpp"

namespace pwlbif {

enum class SaddleKind { FixedPoint, PeriodThree };

/// Which saddle the reduction is built around: the fixed point Y of f_L with
/// f_R^m(U) near S, or the right-most point of the RLR-cycle.
struct ReductionSpec {
    SaddleKind kind = SaddleKind::FixedPoint;
    int m = 2;
    NormalFormParams params;
};

struct EpsilonRecord {
    double eta = 0.0;
    double nu = 0.0;
    double epsilon = 0.0;
    /// Solves lambda * sigma^c = 1; +infinity when lambda == 0.
    double c = 0.0;
};

[[nodiscard]] EpsilonRecord make_epsilon_record(double eta, double nu, double lambda, double sigma);

struct Reduction {
    ReducedParams rp;
    EpsilonRecord eps;
};

/// eta = b(f_R^{m+1}(U)), nu = b(f_R^m(U)) by direct iteration (fixed-point
/// saddle), or the period-three construction. Throws ValidityError when an
/// intermediate iterate is on the wrong side of the switching line.
[[nodiscard]] Reduction reduced_params_generic(const ReductionSpec& spec);

/// Closed forms for m = 2. Requires params.in_Xi().
[[nodiscard]] std::pair<double, double> reduced_params_closed_form_m2(const NormalFormParams& params);

/// Closed forms for m = 3 with delta_L = 0 (lambda = 0, sigma = tau_L).
[[nodiscard]] std::pair<double, double> reduced_params_closed_form_m3_deltaL0(const NormalFormParams& params);

/// Frame of the saddle RLR-cycle: Ytilde is the fixed point of f_R o f_L o f_R.
struct Period3Frame {
    PlanarPoint Ytilde;
    PlanarPoint Stilde;
    PlanarPoint Utilde;
    PlanarPoint Utilde_prime;
    double sigma = 0.0;
    double lambda = 0.0;
    double eta = 0.0;
    double nu = 0.0;
    /// b(f_L(f_R(V))) for the V on E^u(Ytilde) with f_R(V) on the switching line.
    double nu_prime = 0.0;
    AffineFrame frame;
};

[[nodiscard]] Period3Frame period3_saddle_frame(const NormalFormParams& params);

struct Codim2Options {
    int max_iterations = 100;
    double tolerance = 1e-9;
};

/// Damped Newton with central differences on (eta, nu) = target over the two
/// free coordinates; the other two coordinates are taken from `base`.
/// Throws NoConvergence after max_iterations.
[[nodiscard]] NormalFormParams solve_reduced_target(std::pair<ParamName, ParamName> free_params,
                                                    const NormalFormParams& base, const ReductionSpec& kind,
                                                    std::pair<double, double> target,
                                                    const Codim2Options& opts = {});

/// Subsumed homoclinic connection (eta, nu) = (0, 0), starting from `guess`
/// (which also carries the fixed coordinates).
[[nodiscard]] NormalFormParams locate_codim2(std::pair<ParamName, ParamName> free_params,
                                             const NormalFormParams& guess, int m,
                                             const Codim2Options& opts = {});

}  // namespace pwlbif
