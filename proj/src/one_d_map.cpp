#include "pwlbif/one_d_map.hpp"

#include <cmath>
#include <cstdlib>

#include "pwlbif/errors.hpp"

namespace pwlbif {

namespace {

void require_sigma(double sigma) {
    if (!(sigma > 1.0)) throw DomainError("sigma must be > 1");
}

bool near_power(double z, double p) { return std::abs(z - p) <= kBoundarySnap * p; }

}  // namespace

double sigma_power(double sigma, int k) {
    double p = 1.0;
    if (k >= 0) {
        for (int i = 0; i < k; ++i) p /= sigma;
    } else {
        for (int i = 0; i < -k; ++i) p *= sigma;
    }
    return p;
}

int branch_index(double z, double sigma) {
    if (!(z > 0.0)) throw DomainError("branch_index: z must be positive");
    require_sigma(sigma);
    const int k0 = static_cast<int>(std::ceil(-std::log(z) / std::log(sigma)));
    for (int j = k0 - 1; j <= k0 + 1; ++j) {
        if (near_power(z, sigma_power(sigma, j))) return j;
    }
    int k = k0;
    while (z < sigma_power(sigma, k)) ++k;
    while (z >= sigma_power(sigma, k - 1)) --k;
    return k;
}

bool on_branch_boundary(double z, double sigma) {
    const int k = branch_index(z, sigma);
    return near_power(z, sigma_power(sigma, k));
}

double eval_branch(const ReducedParams& rp, int k, double z) {
    const double s = rp.sigma;
    return (rp.eta - rp.nu) / (s - 1.0) * std::pow(s, k) * z + (-rp.eta + s * rp.nu) / (s - 1.0);
}

double eval_h(const ReducedParams& rp, double z) {
    if (!(z > 0.0)) throw DomainError("eval_h: z must be positive");
    return eval_branch(rp, branch_index(z, rp.sigma), z);
}

bool Interval::contains(double z) const noexcept {
    if (lo == hi) return z == lo;
    const bool above = lo_closed ? z >= lo : z > lo;
    const bool below = hi_closed ? z <= hi : z < hi;
    return above && below;
}

Interval absorbing_interval(const ReducedParams& rp) noexcept {
    if (rp.eta < rp.nu) return {rp.eta, rp.nu, false, true};
    if (rp.eta > rp.nu) return {rp.nu, rp.eta, true, false};
    return {rp.eta, rp.eta, true, true};
}

BranchRange branch_range(const ReducedParams& rp) {
    if (!(rp.eta > 0.0 && rp.nu > 0.0)) throw DomainError("branch_range: need eta > 0 and nu > 0");
    const double s = rp.sigma;
    if (rp.eta <= rp.nu) {
        return {branch_index(rp.nu, s), branch_index(rp.eta, s)};
    }
    // J = [nu, eta): the right end is open, so an exact power at eta drops
    // the branch it starts.
    const int k_eta = branch_index(rp.eta, s);
    const int k_min = on_branch_boundary(rp.eta, s) ? k_eta + 1 : k_eta;
    return {k_min, branch_index(rp.nu, s)};
}

int branch_count(const ReducedParams& rp) {
    if (!(rp.eta > 0.0 && rp.nu > 0.0)) throw DomainError("branch_count: need eta > 0 and nu > 0");
    require_sigma(rp.sigma);
    const double s = rp.sigma;
    if (rp.eta <= rp.nu) {
        return branch_index(rp.eta, s) - branch_index(rp.nu, s) + 1;
    }
    // ceil(-ln nu / ln s) - floor(-ln eta / ln s); the floor equals the
    // branch index exactly when eta is a power of s, and is one less otherwise.
    const int k_eta = branch_index(rp.eta, s);
    const int floor_term = on_branch_boundary(rp.eta, s) ? k_eta : k_eta - 1;
    return branch_index(rp.nu, s) - floor_term;
}

double branch_slope(const ReducedParams& rp, int k) {
    return (rp.eta - rp.nu) / (rp.sigma - 1.0) * std::pow(rp.sigma, k);
}

FixedPointInfo fixed_point(const ReducedParams& rp, int k) {
    require_sigma(rp.sigma);
    const double s = rp.sigma;
    const double lo = sigma_power(s, k);
    const double hi = sigma_power(s, k - 1);
    FixedPointInfo out;
    if (rp.eta == rp.nu) {
        out.value = rp.eta;
        out.slope = 0.0;
    } else {
        out.slope = branch_slope(rp, k);
        if (std::abs(out.slope - 1.0) <= 1e-14) throw NoFixedPoint("fixed_point: branch slope is 1");
        out.value = (-rp.eta + s * rp.nu) / (s - 1.0 - (rp.eta - rp.nu) * std::pow(s, k));
    }
    out.admissible = out.value > lo && out.value < hi;
    out.stable = out.admissible && std::abs(out.slope) < 1.0;
    return out;
}

bool Triangle::contains(double eta, double nu) const {
    const double pk = sigma_power(sigma, k);
    const double pk1 = sigma_power(sigma, k - 1);
    return eta < pk1 && nu > pk && nu < eta + pk1 - pk;
}

Triangle triangle_Pk(double sigma, int k) {
    require_sigma(sigma);
    const double pk = sigma_power(sigma, k);
    const double pk1 = sigma_power(sigma, k - 1);
    Triangle t;
    t.sigma = sigma;
    t.k = k;
    t.vertices = {{{pk1, pk}, {pk1, (2.0 * sigma - 1.0) * pk}, {(2.0 - sigma) * pk, pk}}};
    return t;
}

bool triangles_intersect(double sigma, int k1, int k2) {
    require_sigma(sigma);
    if (k1 == k2) throw DomainError("triangles_intersect: indices must differ");
    return std::abs(k1 - k2) == 1;
}

ReducedParams rescale(const ReducedParams& rp) noexcept {
    ReducedParams out = rp;
    out.eta = rp.eta / rp.sigma;
    out.nu = rp.nu / rp.sigma;
    return out;
}

double delta_invertibility(const ReducedParams& rp) noexcept {
    return (rp.eta - rp.nu) * (rp.eta - rp.sigma * rp.nu) / (rp.sigma - 1.0);
}

OneDMap::OneDMap(const ReducedParams& rp)
    : rp_(rp),
      slope_coef_((rp.eta - rp.nu) / (rp.sigma - 1.0)),
      offset_((-rp.eta + rp.sigma * rp.nu) / (rp.sigma - 1.0)),
      inv_log_sigma_(1.0 / std::log(rp.sigma)) {
    require_sigma(rp.sigma);
    int k_lo = 0;
    int k_hi = 0;
    if (rp.eta > 0.0 && rp.nu > 0.0) {
        const BranchRange br = branch_range(rp);
        k_lo = br.k_min - 3;
        k_hi = br.k_max + 3;
    }
    k_lo_ = k_lo;
    for (int k = k_lo; k <= k_hi; ++k) {
        neg_pow_.push_back(sigma_power(rp.sigma, k));
        pos_pow_.push_back(std::pow(rp.sigma, k));
    }
}

double OneDMap::power(int k) const {
    const int i = k - k_lo_;
    if (i >= 0 && i < static_cast<int>(neg_pow_.size())) return neg_pow_[static_cast<std::size_t>(i)];
    return sigma_power(rp_.sigma, k);
}

int OneDMap::branch(double z) const {
    if (!(z > 0.0)) throw DomainError("OneDMap: z must be positive");
    const int k0 = static_cast<int>(std::ceil(-std::log(z) * inv_log_sigma_));
    for (int j = k0 - 1; j <= k0 + 1; ++j) {
        if (near_power(z, power(j))) return j;
    }
    int k = k0;
    while (z < power(k)) ++k;
    while (z >= power(k - 1)) --k;
    return k;
}

double OneDMap::step(double z, int* k_out) const {
    const int k = branch(z);
    if (k_out != nullptr) *k_out = k;
    const int i = k - k_lo_;
    const double sk = (i >= 0 && i < static_cast<int>(pos_pow_.size())) ? pos_pow_[static_cast<std::size_t>(i)]
                                                                       : std::pow(rp_.sigma, k);
    return slope_coef_ * sk * z + offset_;
}

}  // namespace pwlbif
