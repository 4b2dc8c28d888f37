#include "pwlbif/atlas_scan.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <map>
#include <set>

#include "pwlbif/errors.hpp"
#include "pwlbif/homoclinic_params.hpp"
#include "pwlbif/parallel.hpp"

#ifndef PWLBIF_VERSION
#define PWLBIF_VERSION "unknown"
#endif

namespace pwlbif {

std::string library_version() { return PWLBIF_VERSION; }

namespace {

std::string normalized(const std::string& name) {
    std::string out;
    for (const char c : name) {
        if (c != '_') out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

void set_reduced(ReducedParams& rp, const std::string& name, double v) {
    const std::string n = normalized(name);
    if (n == "eta") {
        rp.eta = v;
    } else if (n == "nu") {
        rp.nu = v;
    } else if (n == "sigma") {
        rp.sigma = v;
    } else {
        throw ConfigError("unknown one-dimensional parameter '" + name + "' (expected eta, nu or sigma)");
    }
}

void check_axis(const ScanAxis& a) {
    if (!(a.axis.min < a.axis.max)) throw ConfigError("axis " + a.name + ": empty range");
    if (a.axis.n < 2) throw ConfigError("axis " + a.name + ": need at least 2 cells");
}

}  // namespace

void validate(const ScanConfig& config) {
    check_axis(config.axis1);
    check_axis(config.axis2);
    if (config.n_workers < 1) throw ConfigError("n_workers must be >= 1");
    if (config.family == Family::OneD) {
        ReducedParams probe;
        set_reduced(probe, config.axis1.name, 0.0);
        set_reduced(probe, config.axis2.name, 0.0);
        if (normalized(config.axis1.name) == normalized(config.axis2.name)) {
            throw ConfigError("the two axes must name different parameters");
        }
        const bool sigma_axis = normalized(config.axis1.name) == "sigma" || normalized(config.axis2.name) == "sigma";
        if (!sigma_axis && !(config.sigma > 1.0)) throw ConfigError("sigma must be > 1");
    } else {
        if (parse_param_name(config.axis1.name) == parse_param_name(config.axis2.name)) {
            throw ConfigError("the two axes must name different parameters");
        }
        if (config.m < 2) throw ConfigError("m must be >= 2");
        if (config.slice && config.slice->ratio) throw ConfigError("a ratio slice needs the OneD family");
    }
}

ReducedParams one_d_params(const ScanConfig& config, double v1, double v2) {
    ReducedParams rp;
    rp.sigma = config.sigma;
    set_reduced(rp, config.axis1.name, v1);
    set_reduced(rp, config.axis2.name, v2);
    return rp;
}

NormalFormParams two_d_params(const ScanConfig& config, double v1, double v2) {
    NormalFormParams p = config.fixed;
    set(p, parse_param_name(config.axis1.name), v1);
    set(p, parse_param_name(config.axis2.name), v2);
    return p;
}

namespace {

void fill_one_d_aux(CellResult& out, const ReducedParams& rp, const RotationConfig& rot) {
    out.eta = rp.eta;
    out.nu = rp.nu;
    if (!(rp.eta > 0.0 && rp.nu > 0.0) || !(rp.sigma > 1.0)) return;
    out.N = branch_count(rp);
    out.delta = delta_invertibility(rp);
    if (*out.N == 2 && rp.eta > rp.nu && *out.delta < 0.0) out.rho = rotation_number(rp, rot).rho;
}

std::vector<int> attracting_fixed_branches(const ReducedParams& rp, const ScanBudgets& b) {
    std::vector<int> found;
    const Interval J = absorbing_interval(rp);
    if (J.is_point()) return found;
    const OneDMap h(rp);
    const BranchRange br = branch_range(rp);
    const double tol = b.one_d.tolerance * std::max(rp.eta, rp.nu);
    const int k_last = std::min(br.k_max, br.k_min + b.fixed_point_starts - 1);
    for (int k = br.k_min; k <= k_last; ++k) {
        const double lo = std::max(J.lo, sigma_power(rp.sigma, k));
        const double hi = std::min(J.hi, sigma_power(rp.sigma, k - 1));
        double z = 0.5 * (lo + hi);
        for (std::size_t n = 0; n < b.fixed_point_steps; ++n) {
            int kz = 0;
            const double next = h.step(z, &kz);
            if (std::abs(next - z) <= tol) {
                if (std::find(found.begin(), found.end(), kz) == found.end()) found.push_back(kz);
                break;
            }
            z = next;
        }
    }
    std::sort(found.begin(), found.end());
    return found;
}

}  // namespace

CellResult classify_cell(const ScanConfig& config, double v1, double v2, std::uint64_t stream) {
    CellResult out;
    if (config.family == Family::OneD) {
        const ReducedParams rp = one_d_params(config, v1, v2);
        if (!(rp.sigma > 1.0)) {
            out.cls = AttractorClass::undetermined();
            return out;
        }
        fill_one_d_aux(out, rp, config.budgets.rotation);
        out.cls = classify_1d(rp, config.budgets.one_d);
        if (out.cls.kind != AttractorClass::Kind::Divergent) {
            out.fixed_branches = attracting_fixed_branches(rp, config.budgets);
            if (out.cls.kind == AttractorClass::Kind::Periodic && out.cls.period == 1) {
                const int k = out.cls.branches.front();
                if (std::find(out.fixed_branches.begin(), out.fixed_branches.end(), k) == out.fixed_branches.end()) {
                    out.fixed_branches.push_back(k);
                    std::sort(out.fixed_branches.begin(), out.fixed_branches.end());
                }
            }
        }
        return out;
    }

    const NormalFormParams p = two_d_params(config, v1, v2);
    if (p.in_Xi()) {
        ReductionSpec spec;
        spec.m = config.m;
        spec.params = p;
        try {
            const Reduction red = reduced_params_generic(spec);
            fill_one_d_aux(out, red.rp, config.budgets.rotation);
        } catch (const ValidityError&) {
        }
    }
    auto rng = stream_rng(config.seed, stream);
    const PlanarPoint jitter{uniform(rng, -1e-3, 1e-3), uniform(rng, -1e-3, 1e-3)};
    out.cls = classify_2d(p, config.p0 + jitter, config.budgets.two_d);
    return out;
}

ScanResult scan(const ScanConfig& config) {
    validate(config);
    const auto t0 = std::chrono::steady_clock::now();
    ScanResult res;
    res.config = config;
    res.version = library_version();
    const Axis& a1 = config.axis1.axis;
    const Axis& a2 = config.axis2.axis;
    const std::size_t n1 = static_cast<std::size_t>(a1.n);
    res.cells.resize(n1 * static_cast<std::size_t>(a2.n));

    parallel_for(res.cells.size(), config.n_workers, [&](std::size_t idx) {
        const int i = static_cast<int>(idx % n1);
        const int j = static_cast<int>(idx / n1);
        res.cells[idx] = classify_cell(config, a1.value(i), a2.value(j), idx);
    });

    if (config.family == Family::TwoD && config.coarse_resolution > 0) {
        const ParamGrid grid{config.fixed, parse_param_name(config.axis1.name), a1,
                             parse_param_name(config.axis2.name), a2};
        CandidateOptions copts;
        copts.coarse_resolution = config.coarse_resolution;
        copts.budget = config.budgets.two_d.period;
        copts.seed = config.seed;
        copts.n_workers = config.n_workers;
        // Cells whose simulated orbit missed a coexisting stable cycle get the
        // shortest grown cycle covering them.
        std::vector<std::uint8_t> overlaid(res.cells.size(), 0);
        for (const Candidate& cand : candidate_itineraries(grid, copts)) {
            const auto mask = grow_region(grid, cand.itinerary, cand.seeds, config.n_workers);
            res.grown.push_back(cand.itinerary);
            const int period = static_cast<int>(cand.itinerary.size());
            for (std::size_t idx = 0; idx < mask.size(); ++idx) {
                if (!mask[idx]) continue;
                AttractorClass& c = res.cells[idx].cls;
                const bool replace = c.kind != AttractorClass::Kind::Periodic || (overlaid[idx] && period < c.period);
                if (replace) {
                    overlaid[idx] = 1;
                    c = AttractorClass::periodic(period);
                    c.itinerary = cand.itinerary;
                }
            }
        }
    }
    res.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::vector<Polyline> extract_boundaries(const std::vector<std::string>& labels, const Axis& a1, const Axis& a2) {
    const int n1 = a1.n;
    const int n2 = a2.n;
    if (labels.size() != static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2)) {
        throw DomainError("extract_boundaries: label grid does not match the axes");
    }
    const std::set<std::string> distinct(labels.begin(), labels.end());
    std::vector<Polyline> out;
    if (distinct.size() < 2) return out;

    // Vertices live on cell-centre lattice edges: 2*(j*n1+i) is the edge from
    // (i,j) to (i+1,j), 2*(j*n1+i)+1 the edge from (i,j) to (i,j+1).
    auto hedge = [n1](int i, int j) { return 2L * (static_cast<long>(j) * n1 + i); };
    auto vedge = [n1](int i, int j) { return 2L * (static_cast<long>(j) * n1 + i) + 1; };
    auto vertex = [&](long e) {
        const long cell = e / 2;
        const int i = static_cast<int>(cell % n1);
        const int j = static_cast<int>(cell / n1);
        if (e % 2 == 0) return std::pair{a1.value(i) + 0.5 * a1.step(), a2.value(j)};
        return std::pair{a1.value(i), a2.value(j) + 0.5 * a2.step()};
    };

    for (const std::string& label : distinct) {
        auto inside = [&](int i, int j) {
            return labels[static_cast<std::size_t>(j) * static_cast<std::size_t>(n1) + static_cast<std::size_t>(i)] ==
                   label;
        };
        std::map<long, std::vector<long>> adj;
        auto add = [&](long u, long v) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        };
        for (int j = 0; j + 1 < n2; ++j) {
            for (int i = 0; i + 1 < n1; ++i) {
                const bool bl = inside(i, j);
                const bool br = inside(i + 1, j);
                const bool tr = inside(i + 1, j + 1);
                const bool tl = inside(i, j + 1);
                const long eb = hedge(i, j);
                const long et = hedge(i, j + 1);
                const long el = vedge(i, j);
                const long er = vedge(i + 1, j);
                std::vector<long> crossed;
                if (bl != br) crossed.push_back(eb);
                if (br != tr) crossed.push_back(er);
                if (tl != tr) crossed.push_back(et);
                if (bl != tl) crossed.push_back(el);
                if (crossed.size() == 2) {
                    add(crossed[0], crossed[1]);
                } else if (crossed.size() == 4) {
                    // Saddle: keep the diagonal pair on the "inside" corners apart.
                    if (bl) {
                        add(eb, el);
                        add(er, et);
                    } else {
                        add(eb, er);
                        add(et, el);
                    }
                }
            }
        }
        std::set<std::pair<long, long>> used;
        auto take = [&](long u, long v) { return used.insert({std::min(u, v), std::max(u, v)}).second; };
        auto walk = [&](long start) {
            Polyline pl;
            pl.label = label;
            pl.points.push_back(vertex(start));
            long cur = start;
            for (;;) {
                long next = -1;
                for (const long nb : adj[cur]) {
                    if (take(cur, nb)) {
                        next = nb;
                        break;
                    }
                }
                if (next < 0) break;
                pl.points.push_back(vertex(next));
                cur = next;
            }
            if (pl.points.size() > 1) out.push_back(std::move(pl));
        };
        for (const auto& [v, nbs] : adj) {
            if (nbs.size() % 2 == 1) walk(v);
        }
        for (const auto& [v, nbs] : adj) {
            for (const long nb : nbs) {
                if (!used.count({std::min(v, nb), std::max(v, nb)})) walk(v);
            }
        }
    }
    return out;
}

std::vector<Polyline> extract_boundaries(const ScanResult& result) {
    std::vector<std::string> labels;
    labels.reserve(result.cells.size());
    for (const CellResult& c : result.cells) labels.push_back(c.cls.label());
    return extract_boundaries(labels, result.config.axis1.axis, result.config.axis2.axis);
}

std::vector<SlicePoint> slice_diagram(const ScanConfig& config, int n_points, double t_min, double t_max,
                                      int n_support) {
    if (!config.slice) throw ConfigError("slice_diagram: no slice line configured");
    if (n_points < 1) throw ConfigError("slice_diagram: need n_points >= 1");
    if (!(t_min <= t_max)) throw ConfigError("slice_diagram: empty parameter range");
    validate(config);
    const SliceLine& line = *config.slice;
    std::vector<SlicePoint> out(static_cast<std::size_t>(n_points));

    parallel_for(out.size(), config.n_workers, [&](std::size_t k) {
        SlicePoint& sp = out[k];
        sp.t = n_points == 1 ? t_min : t_min + (t_max - t_min) * static_cast<double>(k) / (n_points - 1);
        if (line.ratio) {
            sp.v1 = sp.t;
            sp.v2 = *line.ratio * sp.t;
        } else {
            sp.v1 = line.from.first + sp.t * (line.to.first - line.from.first);
            sp.v2 = line.from.second + sp.t * (line.to.second - line.from.second);
        }
        sp.cell = classify_cell(config, sp.v1, sp.v2, k);
        if (sp.cell.cls.kind == AttractorClass::Kind::Divergent) return;
        // a periodic orbit needs one sample per point
        const int n_samples =
            sp.cell.cls.kind == AttractorClass::Kind::Periodic ? std::min(n_support, sp.cell.cls.period) : n_support;
        if (n_samples <= 0) return;
        if (config.family == Family::OneD) {
            const ReducedParams rp = one_d_params(config, sp.v1, sp.v2);
            const OneDMap h(rp);
            double z = absorbing_interval(rp).midpoint();
            for (std::size_t n = 0; n < config.budgets.one_d.burn_in; ++n) z = h(z);
            for (int n = 0; n < n_samples; ++n) {
                z = h(z);
                sp.support_z.push_back(z);
            }
        } else {
            const NormalFormParams p = two_d_params(config, sp.v1, sp.v2);
            const OrbitRecord orbit =
                iterate_orbit(p, config.p0, config.budgets.two_d.period.burn_in + static_cast<std::size_t>(n_samples));
            if (orbit.diverged) return;
            sp.support_xy.assign(orbit.points.end() - n_samples, orbit.points.end());
        }
    });
    return out;
}

}  // namespace pwlbif
