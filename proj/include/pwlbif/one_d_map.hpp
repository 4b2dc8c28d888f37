#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace pwlbif {

/// Parameters (eta, nu, sigma) of the one-dimensional discontinuous map h.
/// m and lambda record where the triple came from, when it was computed from
/// a two-dimensional parameter point.
struct ReducedParams {
    double eta = 0.0;
    double nu = 0.0;
    double sigma = 2.0;
    std::optional<int> m;
    std::optional<double> lambda;
};

/// Relative tolerance under which a point is treated as lying exactly on a
/// branch boundary sigma^{-j}.
inline constexpr double kBoundarySnap = 1e-12;

/// sigma^{-k}, by repeated division (k > 0) or multiplication (k < 0). Every
/// boundary comparison in this module goes through this function.
[[nodiscard]] double sigma_power(double sigma, int k);

/// k with z in I_k = [sigma^{-k}, sigma^{-(k-1)}). Throws DomainError for z <= 0.
[[nodiscard]] int branch_index(double z, double sigma);

/// True if z is within kBoundarySnap (relative) of some sigma^{-j}.
[[nodiscard]] bool on_branch_boundary(double z, double sigma);

/// The linear branch h_k, evaluated anywhere.
[[nodiscard]] double eval_branch(const ReducedParams& rp, int k, double z);
[[nodiscard]] double eval_h(const ReducedParams& rp, double z);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = true;

    [[nodiscard]] bool contains(double z) const noexcept;
    [[nodiscard]] bool is_point() const noexcept { return lo == hi; }
    [[nodiscard]] double length() const noexcept { return hi - lo; }
    [[nodiscard]] double midpoint() const noexcept { return 0.5 * (lo + hi); }
};

/// J = (eta, nu] if eta < nu, {eta} if eta == nu, [nu, eta) if eta > nu.
[[nodiscard]] Interval absorbing_interval(const ReducedParams& rp) noexcept;

/// Branch indices [k_min, k_max] of the intervals I_k meeting J.
/// Requires eta > 0 and nu > 0.
struct BranchRange {
    int k_min = 0;
    int k_max = 0;
};
[[nodiscard]] BranchRange branch_range(const ReducedParams& rp);

/// Number N of intervals I_k meeting J (closed form). Throws DomainError
/// unless eta > 0 and nu > 0.
[[nodiscard]] int branch_count(const ReducedParams& rp);

struct FixedPointInfo {
    double value = 0.0;
    double slope = 0.0;
    bool admissible = false;
    bool stable = false;
};

/// Slope s_k of h_k.
[[nodiscard]] double branch_slope(const ReducedParams& rp, int k);

/// Fixed point of the branch h_k. Throws NoFixedPoint when s_k == 1.
[[nodiscard]] FixedPointInfo fixed_point(const ReducedParams& rp, int k);

/// The triangle P_k in the (eta, nu)-plane where h has a stable fixed point on
/// branch k.
struct Triangle {
    double sigma = 2.0;
    int k = 0;
    /// bottom-right, top, left.
    std::array<std::pair<double, double>, 3> vertices{};

    /// Open-set membership.
    [[nodiscard]] bool contains(double eta, double nu) const;
};

[[nodiscard]] Triangle triangle_Pk(double sigma, int k);

/// P_{k1} and P_{k2} overlap iff |k1 - k2| == 1. k1 == k2 is a DomainError.
[[nodiscard]] bool triangles_intersect(double sigma, int k1, int k2);

/// (eta / sigma, nu / sigma, sigma): same dynamics at z / sigma, one branch over.
[[nodiscard]] ReducedParams rescale(const ReducedParams& rp) noexcept;

/// (eta - nu)(eta - sigma nu) / (sigma - 1). With two increasing branches over
/// J, negative means h|_J is one-to-one.
[[nodiscard]] double delta_invertibility(const ReducedParams& rp) noexcept;

/// Fast evaluator for long orbits: powers of sigma for the branches around J
/// are tabulated once.
class OneDMap {
public:
    explicit OneDMap(const ReducedParams& rp);

    [[nodiscard]] const ReducedParams& params() const noexcept { return rp_; }
    [[nodiscard]] int branch(double z) const;
    [[nodiscard]] double operator()(double z) const { return step(z, nullptr); }
    /// h(z); stores the branch index used in *k when k is non-null.
    double step(double z, int* k) const;

private:
    [[nodiscard]] double power(int k) const;  // sigma^{-k}

    ReducedParams rp_;
    double slope_coef_;
    double offset_;
    double inv_log_sigma_;
    int k_lo_ = 0;
    std::vector<double> neg_pow_;  // sigma^{-k}, k = k_lo_ ...
    std::vector<double> pos_pow_;  // sigma^{k}
};

}  // namespace pwlbif
