#include "pwlbif/homoclinic_params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pwlbif/errors.hpp"

namespace pwlbif {

namespace {

constexpr double kSideTolerance = 1e-10;

struct Eigen2 {
    double small = 0.0;  // |small| < |large|
    double large = 0.0;
    bool real = false;
};

Eigen2 real_eigenvalues(const AffinePiece& a) {
    const double tr = a.trace();
    const double det = a.det();
    const double disc = tr * tr - 4.0 * det;
    Eigen2 e;
    if (disc < 0.0) return e;
    e.real = true;
    const double root = std::sqrt(disc);
    e.large = tr >= 0.0 ? 0.5 * (tr + root) : 0.5 * (tr - root);
    e.small = e.large != 0.0 ? det / e.large : 0.0;
    return e;
}

PlanarPoint eigenvector(const AffinePiece& a, double mu) {
    const PlanarPoint v1{a.m12, mu - a.m11};
    const PlanarPoint v2{mu - a.m22, a.m21};
    return max_norm(v1) >= max_norm(v2) ? v1 : v2;
}

/// Intersection of {origin + t dir} with x = 0.
PlanarPoint hit_switching_line(PlanarPoint origin, PlanarPoint dir) {
    if (dir.x == 0.0) throw ValidityError("eigenline is parallel to the switching line");
    const double t = -origin.x / dir.x;
    return {0.0, origin.y + t * dir.y};
}

void require_side(PlanarPoint p, Side side, const char* what) {
    const bool ok = side == Side::L ? p.x <= kSideTolerance : p.x >= -kSideTolerance;
    if (!ok) {
        throw ValidityError(std::string("period-three frame: ") + what + " is on the wrong side of the switching line");
    }
}

}  // namespace

EpsilonRecord make_epsilon_record(double eta, double nu, double lambda, double sigma) {
    EpsilonRecord r;
    r.eta = eta;
    r.nu = nu;
    r.epsilon = std::max(std::abs(eta), std::abs(nu));
    r.c = lambda > 0.0 ? -std::log(lambda) / std::log(sigma) : std::numeric_limits<double>::infinity();
    return r;
}

Period3Frame period3_saddle_frame(const NormalFormParams& params) {
    const AffinePiece fl = left_piece(params);
    const AffinePiece fr = right_piece(params);
    const AffinePiece cycle_map = fr.after(fl).after(fr);

    // (I - M) Y = t
    const double a11 = 1.0 - cycle_map.m11;
    const double a12 = -cycle_map.m12;
    const double a21 = -cycle_map.m21;
    const double a22 = 1.0 - cycle_map.m22;
    const double det = a11 * a22 - a12 * a21;
    if (std::abs(det) <= 1e-12) throw ValidityError("period-three frame: RLR fixed-point system is singular");

    Period3Frame out;
    out.Ytilde = {(cycle_map.b1 * a22 - a12 * cycle_map.b2) / det, (a11 * cycle_map.b2 - a21 * cycle_map.b1) / det};

    require_side(out.Ytilde, Side::R, "Ytilde");
    require_side(fr(out.Ytilde), Side::L, "f_R(Ytilde)");
    require_side(fl(fr(out.Ytilde)), Side::R, "f_L(f_R(Ytilde))");

    const Eigen2 ev = real_eigenvalues(cycle_map);
    if (!ev.real || !(ev.large > 1.0) || !(std::abs(ev.small) < 1.0)) {
        throw ValidityError("period-three frame: RLR-cycle is not a saddle with unstable multiplier > 1");
    }
    out.sigma = ev.large;
    out.lambda = ev.small;

    const PlanarPoint vs = eigenvector(cycle_map, ev.small);
    const PlanarPoint vu = eigenvector(cycle_map, ev.large);
    out.Stilde = hit_switching_line(out.Ytilde, vs);
    out.Utilde = hit_switching_line(out.Ytilde, vu);
    out.Utilde_prime = fr(fl(fr(out.Utilde)));
    out.frame = {out.Ytilde, out.Stilde, out.Utilde};

    // The fundamental domain from Utilde to Utilde' lies left of the switching
    // line and f_L carries it to the right.
    require_side(out.Utilde_prime, Side::L, "Utilde'");
    require_side(fl(out.Utilde), Side::R, "f_L(Utilde)");
    require_side(fl(out.Utilde_prime), Side::R, "f_L(Utilde')");

    out.eta = out.frame.to_ab(fr(fl(out.Utilde_prime))).b;
    out.nu = out.frame.to_ab(fr(fl(out.Utilde))).b;

    const double denom = params.tau_R * vu.x + vu.y;
    if (denom == 0.0) throw ValidityError("period-three frame: f_R(E^u) is parallel to the switching line");
    const double t = -(params.tau_R * out.Ytilde.x + out.Ytilde.y + 1.0) / denom;
    const PlanarPoint V = out.Ytilde + t * vu;
    out.nu_prime = out.frame.to_ab(fl(fr(V))).b;
    return out;
}

Reduction reduced_params_generic(const ReductionSpec& spec) {
    if (spec.kind == SaddleKind::PeriodThree) {
        const Period3Frame fr = period3_saddle_frame(spec.params);
        Reduction r;
        r.rp = {fr.eta, fr.nu, fr.sigma, std::nullopt, fr.lambda};
        r.eps = make_epsilon_record(fr.eta, fr.nu, fr.lambda, fr.sigma);
        return r;
    }
    if (spec.m < 2) throw DomainError("reduced_params_generic: m must be >= 2");
    const SaddleData s = saddle_data(spec.params);
    PlanarPoint p = s.U;
    PlanarPoint fm;
    for (int k = 1; k <= spec.m + 1; ++k) {
        p = apply_right(spec.params, p);
        if (k <= spec.m - 1 && !(p.x > 0.0)) {
            throw ValidityError("reduced_params_generic: f_R^" + std::to_string(k) + "(U) is not in Omega_R");
        }
        if (k == spec.m) fm = p;
    }
    Reduction r;
    r.rp = {b_coord(s, p), b_coord(s, fm), s.sigma, spec.m, s.lambda};
    r.eps = make_epsilon_record(r.rp.eta, r.rp.nu, s.lambda, s.sigma);
    return r;
}

std::pair<double, double> reduced_params_closed_form_m2(const NormalFormParams& params) {
    const SaddleData s = saddle_data(params);
    const double lam = s.lambda;
    const double sig = s.sigma;
    const double tr = params.tau_R;
    const double dr = params.delta_R;
    const double eta = (dr * (tr - lam + 1.0) + ((tr + dr) * lam - tr * (tr + dr + 1.0)) * sig +
                        (tr * tr + tr - dr + 1.0 - (1.0 + tr) * lam) * sig * sig) /
                       (sig - lam);
    const double nu = (dr - (dr + tr) * sig + (tr - lam + 1.0) * sig * sig) / (sig - lam);
    return {eta, nu};
}

std::pair<double, double> reduced_params_closed_form_m3_deltaL0(const NormalFormParams& params) {
    if (params.delta_L != 0.0) throw DomainError("closed form m=3 requires deltaL == 0");
    if (!(params.tau_L > 1.0)) throw DomainError("closed form m=3 requires tauL > 1");
    const double sig = params.tau_L;
    const double tr = params.tau_R;
    const double dr = params.delta_R;
    const double tr2 = tr * tr;
    const double tr3 = tr2 * tr;
    const double eta = dr * (tr2 + tr - dr + 1.0) / sig - tr3 - tr2 * (dr + 1.0) + tr * (dr - 1.0) + dr * dr +
                       (tr3 + tr2 + tr - 2.0 * dr * tr - dr + 1.0) * sig;
    const double nu = dr * (tr + 1.0) / sig - tr * (tr + dr + 1.0) + (tr2 + tr - dr + 1.0) * sig;
    return {eta, nu};
}

namespace {

struct Residual {
    double r1 = 0.0;
    double r2 = 0.0;
    bool ok = false;
    [[nodiscard]] double norm() const {
        return ok ? std::max(std::abs(r1), std::abs(r2)) : std::numeric_limits<double>::infinity();
    }
};

}  // namespace

NormalFormParams solve_reduced_target(std::pair<ParamName, ParamName> free_params, const NormalFormParams& base,
                                      const ReductionSpec& kind, std::pair<double, double> target,
                                      const Codim2Options& opts) {
    if (free_params.first == free_params.second) throw DomainError("solve_reduced_target: free parameters must differ");

    auto eval = [&](double x1, double x2) {
        ReductionSpec spec = kind;
        spec.params = base;
        set(spec.params, free_params.first, x1);
        set(spec.params, free_params.second, x2);
        Residual r;
        try {
            const Reduction red = reduced_params_generic(spec);
            r.r1 = red.rp.eta - target.first;
            r.r2 = red.rp.nu - target.second;
            r.ok = std::isfinite(r.r1) && std::isfinite(r.r2);
        } catch (const Error&) {
            r.ok = false;
        }
        return r;
    };

    double x1 = get(base, free_params.first);
    double x2 = get(base, free_params.second);
    Residual f = eval(x1, x2);
    if (!f.ok) throw NoConvergence("solve_reduced_target: reduction undefined at the initial guess");

    for (int it = 0; it < opts.max_iterations; ++it) {
        if (f.norm() < opts.tolerance) {
            NormalFormParams out = base;
            set(out, free_params.first, x1);
            set(out, free_params.second, x2);
            return out;
        }
        const double h1 = 1e-7 * (1.0 + std::abs(x1));
        const double h2 = 1e-7 * (1.0 + std::abs(x2));
        const Residual p1 = eval(x1 + h1, x2);
        const Residual m1 = eval(x1 - h1, x2);
        const Residual p2 = eval(x1, x2 + h2);
        const Residual m2 = eval(x1, x2 - h2);
        if (!(p1.ok && m1.ok && p2.ok && m2.ok)) {
            throw NoConvergence("solve_reduced_target: reduction undefined near the current iterate");
        }
        const double j11 = (p1.r1 - m1.r1) / (2.0 * h1);
        const double j21 = (p1.r2 - m1.r2) / (2.0 * h1);
        const double j12 = (p2.r1 - m2.r1) / (2.0 * h2);
        const double j22 = (p2.r2 - m2.r2) / (2.0 * h2);
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0 || !std::isfinite(det)) throw NoConvergence("solve_reduced_target: singular Jacobian");
        const double d1 = -(j22 * f.r1 - j12 * f.r2) / det;
        const double d2 = -(-j21 * f.r1 + j11 * f.r2) / det;

        double step = 1.0;
        Residual trial = eval(x1 + d1, x2 + d2);
        while (trial.norm() > f.norm() && step > 1.0 / 1024.0) {
            step *= 0.5;
            trial = eval(x1 + step * d1, x2 + step * d2);
        }
        if (!trial.ok) throw NoConvergence("solve_reduced_target: damped step left the valid region");
        x1 += step * d1;
        x2 += step * d2;
        f = trial;
    }
    if (f.norm() < opts.tolerance) {
        NormalFormParams out = base;
        set(out, free_params.first, x1);
        set(out, free_params.second, x2);
        return out;
    }
    throw NoConvergence("solve_reduced_target: no convergence after " + std::to_string(opts.max_iterations) +
                        " iterations");
}

NormalFormParams locate_codim2(std::pair<ParamName, ParamName> free_params, const NormalFormParams& guess, int m,
                               const Codim2Options& opts) {
    ReductionSpec kind;
    kind.kind = SaddleKind::FixedPoint;
    kind.m = m;
    return solve_reduced_target(free_params, guess, kind, {0.0, 0.0}, opts);
}

}  // namespace pwlbif
