// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "polygon_oracle.hpp"
#include "pwlbif/atlas_scan.hpp"
#include "pwlbif/attractor_classify.hpp"
#include "pwlbif/cycle_solver.hpp"
#include "pwlbif/errors.hpp"
#include "pwlbif/homoclinic_params.hpp"
#include "pwlbif/one_d_map.hpp"
#include "pwlbif/return_map.hpp"
#include "pwlbif/scan_io.hpp"

using namespace pwlbif;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

std::string fmt(const char* f, auto... args) {
    std::string out(static_cast<std::size_t>(std::snprintf(nullptr, 0, f, args...)), '\0');
    std::snprintf(out.data(), out.size() + 1, f, args...);
    return out;
}

Reduction reduce(const NormalFormParams& p, int m) {
    ReductionSpec spec;
    spec.m = m;
    spec.params = p;
    return reduced_params_generic(spec);
}

// 1 -----------------------------------------------------------------------

Outcome closed_form_reduction() {
    struct Case {
        NormalFormParams p;
        double eta, nu;
    };
    const std::array<Case, 3> cases{{{{2, 0.75, -0.45, 1.4}, 0.023125, 0.0875},
                                     {{2, 0.75, -0.501, 1.485}, 0.01236825, 0.00675},
                                     {{2, 0.75, -0.485, 1.455}, 0.01738125, 0.03375}}};
    double worst = 0;
    for (const Case& c : cases) {
        const auto cf = reduced_params_closed_form_m2(c.p);
        const Reduction g = reduce(c.p, 2);
        worst = std::max({worst, std::abs(cf.first - c.eta), std::abs(cf.second - c.nu), std::abs(g.rp.eta - c.eta),
                          std::abs(g.rp.nu - c.nu), std::abs(g.rp.sigma - 1.5)});
    }
    return {worst <= 1e-12, fmt("max deviation %.3g over 3 points (closed form and iteration)", worst)};
}

// 2 -----------------------------------------------------------------------

Outcome codim2_recovery() {
    const NormalFormParams a =
        locate_codim2({ParamName::DeltaR, ParamName::TauR}, {2, 0.75, -0.45, 1.4}, 2, {100, 1e-12});
    const Reduction ra = reduce(a, 2);
    const double res_a = std::max(std::abs(ra.rp.eta), std::abs(ra.rp.nu));
    const double err_a = std::max(std::abs(a.delta_R - 1.5), std::abs(a.tau_R + 0.5));

    const NormalFormParams b = locate_codim2({ParamName::TauL, ParamName::TauR}, {1.4, 0, 0.6, 2}, 3, {100, 1e-12});
    const Reduction rb = reduce(b, 3);
    const double res_b = std::max(std::abs(rb.rp.eta), std::abs(rb.rp.nu));
    const double err_b = std::max(std::abs(b.tau_L - 1.4472), std::abs(b.tau_R - 0.6180));

    const bool ok = res_a < 1e-9 && res_b < 1e-9 && err_a < 1e-8 && err_b < 5e-5;
    return {ok, fmt("m=2: (deltaR,tauR)=(%.12g,%.12g) residual %.2g; m=3: (tauL,tauR)=(%.6f,%.6f) residual %.2g",
                    a.delta_R, a.tau_R, res_a, b.tau_L, b.tau_R, res_b)};
}

// 3 -----------------------------------------------------------------------

Outcome period_three_frame() {
    const Period3Frame f = period3_saddle_frame({-23.0 / 33, 13.0 / 66, -2.5, 2});
    const double dsig = std::abs(f.sigma - 13.0 / 6);
    const bool ok = dsig < 1e-10 && std::abs(f.eta) < 1e-9 && std::abs(f.nu) < 1e-9;
    return {ok, fmt("sigma-13/6=%.2g eta=%.2g nu=%.2g", dsig, f.eta, f.nu)};
}

// 4 -----------------------------------------------------------------------

Outcome scaling_near_codim2() {
    PsiSampleOptions opts;
    opts.n_samples = 100'000;
    opts.seed = 2024;
    opts.n_workers = workers();

    const NormalFormParams limit{2, 0.75, -0.5, 1.5};
    const auto ray = geometric_ray(limit, {ParamName::DeltaR, ParamName::TauR}, {-0.1, 0.05}, 2, 0.06, 1 / 2.25, 6);
    const ScalingReport r = verify_theorem1_scaling(ray, limit, 2, opts);
    const double sup_slope = r.sup_error_slope.value_or(0.0);
    const double frac_slope = r.fraction_slope.value_or(0.0);

    // deltaL = 0: the reduction is exact
    const NormalFormParams limit0 =
        locate_codim2({ParamName::TauL, ParamName::TauR}, {1.4, 0, 0.6, 2}, 3, {100, 1e-12});
    const auto ray0 = geometric_ray(limit0, {ParamName::TauL, ParamName::TauR},
                                    {1.3 - limit0.tau_L, 0.7 - limit0.tau_R}, 3, 0.06, 0.5, 6);
    const ScalingReport r0 = verify_theorem1_scaling(ray0, limit0, 3, opts);
    double worst0 = 0;
    for (const Psi0Stats& s : r0.stats) worst0 = std::max(worst0, s.sup_error);

    const bool ok = sup_slope >= 1.56 && frac_slope >= 0.85 && worst0 < 1e-10;
    return {ok, fmt("sup-error slope %.4f (c=%.4f), fraction slope %.4f, deltaL=0 max error %.2g", sup_slope,
                    r.c_expected, frac_slope, worst0)};
}

// 5 -----------------------------------------------------------------------

Outcome proposition_suite() {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    int bad_scale = 0, bad_count = 0, bad_tri = 0, bad_clip = 0, bad_conv = 0;

    for (int i = 0; i < 1000; ++i) {
        const ReducedParams p{0.2 * u(rng), 0.2 * u(rng), 1.05 + 2 * u(rng)};
        const double z = std::exp(-10 * u(rng));
        const double lhs = eval_h(rescale(p), z / p.sigma);
        const double rhs = eval_h(p, z) / p.sigma;
        if (std::abs(lhs - rhs) > 1e-12 * std::max(std::abs(rhs), 1e-300)) ++bad_scale;
    }

    for (int i = 0; i < 10'000; ++i) {
        const double s = 1.05 + 2.5 * u(rng);
        double eta = std::exp(-12 * u(rng));
        double nu = std::exp(-12 * u(rng));
        const int k = static_cast<int>(20 * u(rng));
        switch (i % 4) {
            case 1: eta = sigma_power(s, k); break;
            case 2: nu = sigma_power(s, k) * (1 + (u(rng) < 0.5 ? 1e-9 : -1e-9)); break;
            case 3:
                eta = sigma_power(s, k);
                nu = sigma_power(s, k + static_cast<int>(3 * u(rng)));
                break;
            default: break;
        }
        const ReducedParams p{eta, nu, s};
        if (branch_count(p) != oracle::count_by_enumeration(p)) ++bad_count;
    }

    for (int i = 0; i < 10'000; ++i) {
        const double s = 1.05 + 2.0 * u(rng);
        const int k = static_cast<int>(10 * u(rng)) - 1;
        const double scale = sigma_power(s, k - 1);
        const double eta = scale * (-0.2 + 1.4 * u(rng));
        const double nu = scale * (-0.2 + 1.4 * u(rng));
        const oracle::Fp f = oracle::branch_fixed_point({eta, nu, s}, k);
        const bool expected = std::abs(f.s) < 1 && f.z > sigma_power(s, k) && f.z < sigma_power(s, k - 1);
        if (triangle_Pk(s, k).contains(eta, nu) != expected) ++bad_tri;
    }

    for (double s : {1.1, 1.5, 13.0 / 6.0, 2.5})
        for (int k1 = -2; k1 <= 10; ++k1)
            for (int k2 = -2; k2 <= 10; ++k2)
                if (k1 != k2 &&
                    triangles_intersect(s, k1, k2) !=
                        oracle::overlap(triangle_Pk(s, k1).vertices, triangle_Pk(s, k2).vertices))
                    ++bad_clip;

    // orbits from inside P_k settle on a stable fixed point of branch k-1, k or k+1
    for (int i = 0; i < 100; ++i) {
        const double s = 1.1 + 1.4 * u(rng);
        const int k = 1 + static_cast<int>(10 * u(rng));
        const auto v = triangle_Pk(s, k).vertices;
        double a = u(rng), b = u(rng);
        if (a + b > 1) {
            a = 1 - a;
            b = 1 - b;
        }
        const double eta = v[0].first + a * (v[1].first - v[0].first) + b * (v[2].first - v[0].first);
        const double nu = v[0].second + a * (v[1].second - v[0].second) + b * (v[2].second - v[0].second);
        const ReducedParams p{eta, nu, s};
        std::vector<double> targets;
        for (int j = k - 1; j <= k + 1; ++j) {
            const oracle::Fp f = oracle::branch_fixed_point(p, j);
            if (std::abs(f.s) < 1 && f.z > sigma_power(s, j) && f.z < sigma_power(s, j - 1)) targets.push_back(f.z);
        }
        const Interval J = absorbing_interval(p);
        const OneDMap h(p);
        for (int t = 0; t < 100; ++t) {
            double z = J.lo + (J.hi - J.lo) * u(rng);
            if (!(z > 0)) z = J.hi;
            for (int n = 0; n < 10'000; ++n) z = h(z);
            const bool hit = std::any_of(targets.begin(), targets.end(),
                                         [&](double w) { return std::abs(z - w) <= 1e-8 * std::max(eta, nu); });
            if (!hit) ++bad_conv;
        }
    }

    const bool ok = bad_scale + bad_count + bad_tri + bad_clip + bad_conv == 0;
    return {ok, fmt("violations: rescaling %d/1000, branch count %d/10000, triangle %d/10000, overlap %d/676, "
                    "convergence %d/10000",
                    bad_scale, bad_count, bad_tri, bad_clip, bad_conv)};
}

// 6 -----------------------------------------------------------------------

Outcome band_counts() {
    const NormalFormParams p{2, 0.75, -0.501, 1.485};
    const GcdConfig cfg;  // eps 1e-4, 2000 references
    const OrbitRecord o = iterate_orbit(p, {0.1, -0.1}, cfg.burn_in + cfg.orbit_len);
    const int gcd = o.diverged ? -1 : eckstein_gcd(o.points, cfg);
    const int b1 = boxcount_bands_1d({0.01236825, 0.00675, 1.5});
    const int b2 = boxcount_bands_1d({0.01738125, 0.03375, 1.5});
    return {gcd == 14 && b1 == 2 && b2 == 2, fmt("eckstein gcd %d, box counts %d and %d", gcd, b1, b2)};
}

// 7 -----------------------------------------------------------------------

Outcome cycle_coexistence() {
    struct Case {
        NormalFormParams p;
        std::vector<const char*> words;
    };
    const std::vector<Case> cases{{{2, 0.75, -0.484, 1.433}, {"L^7R^2", "L^8R^2", "L^9R^2"}},
                                  {{2, 0.75, -0.494, 1.443}, {"L^8R^2", "L^9R^2", "L^8R^2L^9R^2"}}};
    std::string detail;
    bool ok = true;
    for (const Case& c : cases) {
        for (const char* w : c.words) {
            const Itinerary it = Itinerary::parse(w);
            const CycleSolution s = solve_cycle(c.p, it);
            bool attracts = false;
            if (s.admissible && s.stable) {
                const PeriodDetection d = detect_period_2d(c.p, s.points[0] + PlanarPoint{1e-7, -1e-7});
                attracts = d.cycle && d.cycle->word == it.canonical();
            }
            const bool good = s.admissible && s.stable && attracts;
            ok = ok && good;
            if (!good) detail += std::string(" missing ") + w;
        }
    }
    if (detail.empty()) detail = " L^7R^2, L^8R^2, L^9R^2 at the first point; L^8R^2, L^9R^2, L^8R^2L^9R^2 at the second, all stable and admissible";
    return {ok, detail.substr(1)};
}

// 8 -----------------------------------------------------------------------

double distance_to_triangle(const Triangle& t, double e, double n) {
    double best = 1e300;
    for (int i = 0; i < 3; ++i) {
        const auto a = t.vertices[static_cast<std::size_t>(i)];
        const auto b = t.vertices[static_cast<std::size_t>((i + 1) % 3)];
        const double dx = b.first - a.first, dy = b.second - a.second;
        const double s = std::clamp(((e - a.first) * dx + (n - a.second) * dy) / (dx * dx + dy * dy), 0.0, 1.0);
        best = std::min(best, std::hypot(e - a.first - s * dx, n - a.second - s * dy));
    }
    return best;
}

ScanConfig atlas_config() {
    ScanConfig c;
    c.family = Family::OneD;
    c.sigma = 1.5;
    c.axis1 = {"eta", {0.0, 0.12, 200}};
    c.axis2 = {"nu", {0.0, 0.12, 200}};
    c.n_workers = workers();
    c.seed = 1;
    return c;
}

std::string atlas_triangles(int& mismatches, int& checked) {
    const ScanResult r = scan(atlas_config());
    const Axis& ax = r.config.axis1.axis;
    const double w = ax.step();
    mismatches = 0;
    checked = 0;
    int worst_k = 0;
    for (int j = 0; j < 200; ++j)
        for (int i = 0; i < 200; ++i) {
            const CellResult& c = r.at(i, j);
            const double e = ax.value(i), n = r.config.axis2.axis.value(j);
            for (int k = 1; k <= 40; ++k) {
                const Triangle t = triangle_Pk(1.5, k);
                const bool analytic = t.contains(e, n);
                const bool found =
                    std::find(c.fixed_branches.begin(), c.fixed_branches.end(), k) != c.fixed_branches.end();
                if (analytic) ++checked;
                if (analytic != found && distance_to_triangle(t, e, n) > w) {
                    ++mismatches;
                    worst_k = k;
                }
            }
        }
    std::string out = fmt("(a) %d cells inside triangles, %d mismatches beyond one cell width", checked, mismatches);
    if (mismatches > 0) out += fmt(" (last at k=%d)", worst_k);
    return out;
}

std::string slice_b_farey(bool& ok) {
    ScanConfig c = atlas_config();
    c.slice = SliceLine{0.7, {}, {}};
    const double lo = sigma_power(1.5, 9), hi = lo / 0.7;
    const auto pts = slice_diagram(c, 2000, lo * 1.0001, hi * 0.9999, 1);
    // eta-centre of each rational tongue with q <= 5
    std::map<std::pair<int, int>, std::pair<double, int>> tongues;
    for (const SlicePoint& p : pts) {
        if (!p.cell.rho || p.cell.cls.kind != AttractorClass::Kind::Periodic) continue;
        const int q = p.cell.cls.period;
        const int u = static_cast<int>(std::lround(*p.cell.rho * q));
        if (q > 5 || std::abs(*p.cell.rho * q - u) > 1e-9) continue;
        const int g = std::gcd(u, q);
        auto& [sum, n] = tongues[{u / g, q / g}];
        sum += p.v1;
        ++n;
    }
    std::vector<std::pair<double, double>> order;  // (centre, u/q)
    std::string seen;
    for (const auto& [uq, acc] : tongues) {
        order.push_back({acc.first / acc.second, double(uq.first) / uq.second});
        seen += fmt(" %d/%d", uq.first, uq.second);
    }
    std::sort(order.begin(), order.end());
    bool monotone = true;
    for (std::size_t i = 1; i < order.size(); ++i) monotone = monotone && order[i].second > order[i - 1].second;
    std::set<std::pair<int, int>> want;
    for (int q = 2; q <= 5; ++q)
        for (int u = 1; u < q; ++u)
            if (std::gcd(u, q) == 1) want.insert({u, q});
    bool all = true;
    for (const auto& uq : want) all = all && tongues.count(uq) > 0;
    ok = all && monotone;
    return fmt("(b) tongues%s %s", seen.c_str(), monotone ? "in Farey order" : "out of order");
}

std::string slice_a_overlaps(bool& ok) {
    ScanConfig c = atlas_config();
    c.slice = SliceLine{0.05 / 0.0359, {}, {}};
    const auto pts = slice_diagram(c, 3000, 0.004, 0.12, 1);
    std::map<int, int> in_m;
    std::set<int> overlaps;
    for (const SlicePoint& p : pts) {
        for (int k : p.cell.fixed_branches) ++in_m[k];
        for (std::size_t a = 1; a < p.cell.fixed_branches.size(); ++a)
            if (p.cell.fixed_branches[a] == p.cell.fixed_branches[a - 1] + 1) overlaps.insert(p.cell.fixed_branches[a - 1]);
    }
    // consecutive intervals M_k, M_{k+1} present and overlapping
    int run = 0, best = 0;
    for (int k = 0; k < 40; ++k) {
        if (in_m.count(k) && in_m.count(k + 1)) {
            run = overlaps.count(k) ? run + 1 : 0;
            best = std::max(best, run);
        } else {
            run = 0;
        }
    }
    std::string ks;
    for (int k : overlaps) ks += fmt(" %d/%d", k, k + 1);
    ok = best >= 4;
    return fmt("(c) overlapping M_k pairs:%s", ks.c_str());
}

/// A one-interval chaotic attractor that develops a gap (1 <-> 2 bands) does
/// so at a merging bifurcation, where eta or nu lands on a fixed point of h.
/// Other band-count changes along the line are expansion bifurcations at the
/// edges of periodic windows and floating regions; they are listed but not
/// required to produce hits.
std::string slice_d_merging(bool& ok) {
    const double ratio = 0.05 / 0.0262;
    ScanConfig c = atlas_config();
    c.slice = SliceLine{ratio, {}, {}};
    const auto pts = slice_diagram(c, 1000, 0.02, 0.045, 1);
    auto bands = [&](double e) {
        return boxcount_bands_1d({e, ratio * e, 1.5});  // 1000 boxes, 10^6 iterations
    };
    int gaps = 0, gap_hits = 0, others = 0, other_hits = 0;
    std::string where;
    const int margin = 3;
    for (std::size_t i = margin; i + margin < pts.size(); ++i) {
        const auto& a = pts[i - 1].cell.cls;
        const auto& b = pts[i].cell.cls;
        if (a.kind != AttractorClass::Kind::Chaotic || b.kind != AttractorClass::Kind::Chaotic) continue;
        if (a.bands == b.bands) continue;
        bool clean = true;  // stay away from the edges of periodic windows
        for (std::size_t j = i - margin; j <= i + margin; ++j)
            clean = clean && pts[j].cell.cls.kind == AttractorClass::Kind::Chaotic;
        if (!clean) continue;
        double lo = pts[i - 1].v1, hi = pts[i].v1;
        const int blo = bands(lo), bhi = bands(hi);
        if (blo == bhi) continue;  // not confirmed at full budget
        for (int it = 0; it < 30; ++it) {
            const double mid = 0.5 * (lo + hi);
            (bands(mid) == blo ? lo : hi) = mid;
        }
        const ReducedParams rp{hi, ratio * hi, 1.5};
        const double tol = 2 * absorbing_interval(rp).length() / 1000;
        const bool hit = !merging_condition_scan(rp, 30, tol).empty();
        if (std::min(blo, bhi) == 1 && std::max(blo, bhi) == 2) {
            ++gaps;
            gap_hits += hit ? 1 : 0;
            where += fmt(" %.7f(%d->%d,%s)", hi, blo, bhi, hit ? "hit" : "no hit");
        } else {
            ++others;
            other_hits += hit ? 1 : 0;
        }
    }
    ok = gaps >= 2 && gap_hits == gaps;
    return fmt("(d) %d gap openings/closings, %d bracketed by merging hits:%s; %d other band-count changes, %d with "
               "hits",
               gaps, gap_hits, where.c_str(), others, other_hits);
}

Outcome atlas_topology() {
    int mismatches = 0, checked = 0;
    const std::string a = atlas_triangles(mismatches, checked);
    bool ok_b = false, ok_c = false, ok_d = false;
    const std::string b = slice_b_farey(ok_b);
    const std::string c = slice_a_overlaps(ok_c);
    const std::string d = slice_d_merging(ok_d);
    const bool ok_a = mismatches == 0 && checked > 1000;
    return {ok_a && ok_b && ok_c && ok_d, a + "; " + b + "; " + c + "; " + d};
}

// 9 -----------------------------------------------------------------------

/// L-run lengths of a cycle word, with all R-runs required to have length m.
std::optional<std::vector<int>> l_runs(const Itinerary& w, int m) {
    const Itinerary c = w.canonical();
    const auto& s = c.word();
    std::vector<int> runs;
    std::size_t i = 0;
    while (i < s.size()) {
        int l = 0, r = 0;
        while (i < s.size() && s[i] == Side::L) ++l, ++i;
        while (i < s.size() && s[i] == Side::R) ++r, ++i;
        if (r != m || l == 0) return std::nullopt;
        runs.push_back(l);
    }
    return runs;
}

Outcome period_formula() {
    const int k = 9, m = 2;
    const double ratio = 0.7;
    const double lo = sigma_power(1.5, k), hi = lo / ratio;
    const std::vector<std::pair<int, int>> targets{{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 5}};
    std::map<int, std::vector<double>> windows;  // period -> eta values where seen
    NormalFormParams guess{2, 0.75, -0.49, 1.49};
    const std::array<PlanarPoint, 4> starts{{{0.1, -0.1}, {-1, -0.5}, {0.5, -0.2}, {0.01, -0.01}}};
    OrbitBudget budget;
    budget.burn_in = 100'000;
    budget.q_max = 200;
    ReductionSpec kind;
    kind.m = m;
    const int n = 800;
    for (int i = 1; i < n; ++i) {
        const double eta = lo + (hi - lo) * i / n;
        guess = solve_reduced_target({ParamName::DeltaR, ParamName::TauR}, guess, kind, {eta, ratio * eta},
                                     {100, 1e-13});
        std::set<int> periods;
        for (PlanarPoint s : starts) {
            const PeriodDetection d = detect_period_2d(guess, s, budget);
            if (!d.cycle) continue;
            const auto runs = l_runs(d.cycle->word, m);
            if (!runs) continue;
            const int u = static_cast<int>(std::count(runs->begin(), runs->end(), k));
            const int v = static_cast<int>(std::count(runs->begin(), runs->end(), k + 1));
            if (u + v != static_cast<int>(runs->size()) || u == 0 || v == 0) continue;
            periods.insert(d.cycle->period);
        }
        for (int p : periods) windows[p].push_back(eta);
    }
    bool ok = true;
    std::string detail;
    std::vector<std::pair<double, double>> order;
    for (const auto& [u, q] : targets) {
        const int p = q * (k + m + 1) - u;
        const auto it = windows.find(p);
        const bool found = it != windows.end();
        ok = ok && found;
        detail += fmt(" %d/%d->%d%s", u, q, p, found ? "" : "(missing)");
        if (found) {
            double sum = 0;
            for (double e : it->second) sum += e;
            order.push_back({sum / it->second.size(), double(u) / q});
        }
    }
    std::sort(order.begin(), order.end());
    for (std::size_t i = 1; i < order.size(); ++i) ok = ok && order[i].second > order[i - 1].second;
    return {ok, "periods" + detail + (ok ? ", windows in Farey order" : "")};
}

// 10 ----------------------------------------------------------------------

Outcome determinism() {
    auto csv = [](ScanConfig c, int n_workers) {
        c.n_workers = n_workers;
        std::ostringstream os;
        write_scan_csv(scan(c), os);
        return os.str();
    };
    ScanConfig one = atlas_config();
    one.axis1.axis.n = 60;
    one.axis2.axis.n = 60;
    one.seed = 77;
    ScanConfig two;
    two.family = Family::TwoD;
    two.fixed = {2, 0.75, 0, 0};
    two.axis1 = {"deltaR", {1.44, 1.47, 16}};
    two.axis2 = {"tauR", {-0.495, -0.475, 16}};
    two.coarse_resolution = 4;
    two.seed = 77;
    bool ok = true;
    for (const ScanConfig& c : {one, two}) {
        const std::string a = csv(c, 1);
        ok = ok && a == csv(c, 2) && a == csv(c, 4);
    }
    return {ok, ok ? "byte-identical CSV for 1, 2 and 4 workers (1D and 2D scans)" : "CSV differs across workers"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"closed-form parameter reduction", closed_form_reduction},
        {"codimension-two recovery", codim2_recovery},
        {"period-three frame", period_three_frame},
        {"return-map error scaling", scaling_near_codim2},
        {"one-dimensional map identities", proposition_suite},
        {"band counts", band_counts},
        {"cycle coexistence", cycle_coexistence},
        {"atlas topology", atlas_topology},
        {"period formula", period_formula},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("AC%zu %s %s: %s [%.1fs]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
