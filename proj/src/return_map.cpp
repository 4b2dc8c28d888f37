#include "pwlbif/return_map.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "pwlbif/errors.hpp"
#include "pwlbif/parallel.hpp"

namespace pwlbif {

ReturnResult first_return(const NormalFormParams& params, PlanarPoint p, std::size_t max_steps,
                          double escape_radius) {
    if (!in_Q3(p)) throw DomainError("first_return: start point is not in the third quadrant");
    if (!(params.delta_L >= 0.0) || !(params.delta_R > 0.0)) {
        throw DomainError("first_return: needs delta_L >= 0 and delta_R > 0");
    }
    ReturnResult out;
    ReturnRecord& rec = out.record;
    rec.start = p;

    PlanarPoint q = p;
    std::size_t n = 0;
    // f_L sends x <= 0 to y >= 0, so no left iterate is in Q3.
    while (q.x <= 0.0) {
        if (n == max_steps) {
            out.status = ReturnStatus::Budget;
            out.steps = n;
            return out;
        }
        q = apply_left(params, q);
        ++n;
        ++rec.ell;
        if (!(max_norm(q) <= escape_radius)) {
            out.status = ReturnStatus::Diverged;
            out.steps = n;
            return out;
        }
    }
    // f_R sends x > 0 to y < 0: the first right iterate with x <= 0 is in Q3.
    while (q.x > 0.0) {
        if (n == max_steps) {
            out.status = ReturnStatus::Budget;
            out.steps = n;
            return out;
        }
        q = apply_right(params, q);
        ++n;
        ++rec.r;
        if (!(max_norm(q) <= escape_radius)) {
            out.status = ReturnStatus::Diverged;
            out.steps = n;
            return out;
        }
    }
    rec.end = q;
    if (params.in_Xi()) {
        const SaddleData s = saddle_data(params);
        rec.z = b_coord(s, rec.start);
        rec.z_prime = b_coord(s, rec.end);
    } else {
        rec.z = rec.z_prime = std::numeric_limits<double>::quiet_NaN();
    }
    out.status = ReturnStatus::Returned;
    out.steps = n;
    return out;
}

namespace detail {

PsiSampler::PsiSampler(const NormalFormParams& params, const ReducedParams& rp) : saddle_(saddle_data(params)) {
    eps_ = std::max(std::abs(rp.eta), std::abs(rp.nu));
    if (!(eps_ > 0.0)) throw DomainError("sample_psi: epsilon is zero (codimension-two point)");
    const PlanarPoint ds = saddle_.S - saddle_.Y;  // x > 0, y < 0 inside Xi
    const PlanarPoint du = saddle_.U - saddle_.Y;
    a_lo_ = std::numeric_limits<double>::infinity();
    a_hi_ = -std::numeric_limits<double>::infinity();
    for (const double b : {0.0, 2.0 * eps_}) {
        const double upper = -(saddle_.Y.x + b * du.x) / ds.x;  // x <= 0
        const double lower = -(saddle_.Y.y + b * du.y) / ds.y;  // y < 0
        a_lo_ = std::min(a_lo_, lower);
        a_hi_ = std::max(a_hi_, upper);
    }
    if (!(a_lo_ < a_hi_)) throw DomainError("sample_psi: the strip does not meet the third quadrant");
}

std::optional<PlanarPoint> PsiSampler::draw(std::mt19937_64& rng) const {
    const double a = uniform(rng, a_lo_, a_hi_);
    const double b = uniform(rng, 0.0, 2.0 * eps_);
    if (b <= 0.0) return std::nullopt;
    const PlanarPoint p = from_ab(saddle_, {a, b});
    if (!in_Q3(p)) return std::nullopt;
    return p;
}

bool in_psi0(const ReturnRecord& rec, const ReducedParams& rp) {
    if (!rp.m || rec.r != *rp.m) return false;
    const double scaled = std::pow(rp.sigma, rec.ell) * rec.z;
    return scaled >= 1.0 && scaled < rp.sigma;
}

}  // namespace detail

namespace {

struct ChunkTally {
    std::size_t n = 0;
    std::size_t psi0 = 0;
    std::size_t diverged = 0;
    std::size_t budget = 0;
    double sup = 0.0;
};

}  // namespace

Psi0Stats sample_psi(const NormalFormParams& params, const ReducedParams& rp, const PsiSampleOptions& opts) {
    if (!rp.m) throw DomainError("sample_psi: reduced parameters must record m");
    const detail::PsiSampler sampler(params, rp);
    const std::size_t n_chunks = detail::chunk_count(opts.n_samples);
    std::vector<ChunkTally> tallies(n_chunks);

    parallel_for(n_chunks, opts.n_workers, [&](std::size_t c) {
        auto rng = stream_rng(opts.seed, c);
        ChunkTally& t = tallies[c];
        const std::size_t quota = detail::chunk_quota(opts.n_samples, c);
        while (t.n < quota) {
            const auto p = sampler.draw(rng);
            if (!p) continue;
            ++t.n;
            const ReturnResult res = first_return(params, *p, opts.max_steps);
            if (res.status == ReturnStatus::Diverged) ++t.diverged;
            if (res.status == ReturnStatus::Budget) ++t.budget;
            if (!res.returned() || !detail::in_psi0(res.record, rp)) continue;
            ++t.psi0;
            const double hz = eval_branch(rp, res.record.ell, res.record.z);
            t.sup = std::max(t.sup, std::abs(res.record.z_prime - hz));
        }
    });

    Psi0Stats out;
    out.epsilon = sampler.epsilon();
    out.c = rp.lambda && *rp.lambda > 0.0 ? -std::log(*rp.lambda) / std::log(rp.sigma)
                                          : std::numeric_limits<double>::infinity();
    for (const ChunkTally& t : tallies) {
        out.n_psi += t.n;
        out.n_psi0 += t.psi0;
        out.n_diverged += t.diverged;
        out.n_budget += t.budget;
        out.sup_error = std::max(out.sup_error, t.sup);
    }
    out.fraction_outside =
        out.n_psi == 0 ? 0.0 : 1.0 - static_cast<double>(out.n_psi0) / static_cast<double>(out.n_psi);
    return out;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("fit_slope: need two or more paired values");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw DomainError("fit_slope: x values are all equal");
    return sxy / sxx;
}

bool ScalingReport::sup_ok(double tol) const {
    if (!sup_error_slope) return max_sup_error < 1e-10;
    return *sup_error_slope >= c_expected - tol;
}

bool ScalingReport::fraction_ok(double min_slope) const {
    return fraction_slope && *fraction_slope >= min_slope;
}

ScalingReport verify_theorem1_scaling(const std::vector<NormalFormParams>& ray, const NormalFormParams& limit, int m,
                                      const PsiSampleOptions& opts) {
    if (ray.size() < 5) throw DomainError("verify_theorem1_scaling: need at least five ray points");
    ScalingReport rep;
    rep.ray = ray;
    const SaddleData at_limit = saddle_data(limit);
    rep.c_expected = at_limit.lambda > 0.0 ? -std::log(at_limit.lambda) / std::log(at_limit.sigma)
                                           : std::numeric_limits<double>::infinity();

    std::vector<double> log_eps;
    std::vector<double> log_sup;
    std::vector<double> log_frac;
    std::vector<double> log_eps_frac;
    for (const NormalFormParams& p : ray) {
        ReductionSpec spec;
        spec.m = m;
        spec.params = p;
        const Reduction red = reduced_params_generic(spec);
        const Psi0Stats st = sample_psi(p, red.rp, opts);
        rep.stats.push_back(st);
        rep.max_sup_error = std::max(rep.max_sup_error, st.sup_error);
        log_eps.push_back(std::log(st.epsilon));
        log_sup.push_back(st.sup_error > 0.0 ? std::log(st.sup_error) : -std::numeric_limits<double>::infinity());
        if (st.fraction_outside > 0.0) {
            log_eps_frac.push_back(std::log(st.epsilon));
            log_frac.push_back(std::log(st.fraction_outside));
        }
    }
    for (std::size_t i = 1; i < rep.stats.size(); ++i) {
        if (!(rep.stats[i].epsilon < rep.stats[i - 1].epsilon)) {
            throw DomainError("verify_theorem1_scaling: eps must decrease along the ray");
        }
    }
    const bool all_positive = std::all_of(log_sup.begin(), log_sup.end(), [](double v) { return std::isfinite(v); });
    if (at_limit.lambda > 0.0 && all_positive) rep.sup_error_slope = fit_slope(log_eps, log_sup);
    if (log_frac.size() >= 2) rep.fraction_slope = fit_slope(log_eps_frac, log_frac);
    return rep;
}

std::vector<NormalFormParams> geometric_ray(const NormalFormParams& limit, std::pair<ParamName, ParamName> coords,
                                            std::pair<double, double> direction, int m, double eps0, double ratio,
                                            int n_points) {
    if (!(ratio > 0.0 && ratio < 1.0) || !(eps0 > 0.0) || n_points < 1) {
        throw DomainError("geometric_ray: need eps0 > 0, 0 < ratio < 1, n_points >= 1");
    }
    auto point_at = [&](double t) {
        NormalFormParams p = limit;
        set(p, coords.first, get(limit, coords.first) + t * direction.first);
        set(p, coords.second, get(limit, coords.second) + t * direction.second);
        return p;
    };
    auto eps_at = [&](double t) {
        ReductionSpec spec;
        spec.m = m;
        spec.params = point_at(t);
        return reduced_params_generic(spec).eps.epsilon;
    };
    std::vector<NormalFormParams> out;
    double target = eps0;
    double t_hi = 1.0;
    for (int j = 0; j < n_points; ++j, target *= ratio) {
        int guard = 0;
        while (eps_at(t_hi) < target) {
            t_hi *= 2.0;
            if (++guard > 60) throw NoConvergence("geometric_ray: eps does not reach the target along the ray");
        }
        double lo = 0.0;
        double hi = t_hi;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (eps_at(mid) < target ? lo : hi) = mid;
        }
        out.push_back(point_at(0.5 * (lo + hi)));
        t_hi = hi;
    }
    return out;
}

}  // namespace pwlbif
