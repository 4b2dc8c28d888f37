#include "pwlbif/attractor_classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_map>

#include "pwlbif/errors.hpp"

namespace pwlbif {

std::string AttractorClass::tag() const {
    switch (kind) {
        case Kind::Periodic: return "periodic";
        case Kind::Chaotic: return "chaotic";
        case Kind::Divergent: return "divergent";
        case Kind::Undetermined: return "undetermined";
    }
    return "undetermined";
}

std::string AttractorClass::label() const {
    switch (kind) {
        case Kind::Periodic: return "P" + std::to_string(period);
        case Kind::Chaotic: return "C" + std::to_string(bands);
        case Kind::Divergent: return "D";
        case Kind::Undetermined: return "U";
    }
    return "U";
}

bool AttractorClass::same_class(const AttractorClass& other) const noexcept {
    return kind == other.kind && period == other.period && bands == other.bands;
}

namespace {

std::uint64_t cell_key(std::int64_t i, std::int64_t j) {
    return (static_cast<std::uint64_t>(i) * 0x9E3779B97F4A7C15ULL) ^ static_cast<std::uint64_t>(j);
}

}  // namespace

GcdResult eckstein_gcd_detailed(std::span<const PlanarPoint> orbit, const GcdConfig& cfg) {
    if (!(cfg.epsilon > 0.0) || cfg.n_refs < 1) throw DomainError("eckstein_gcd: need epsilon > 0 and n_refs >= 1");
    GcdResult out;
    if (orbit.size() <= cfg.burn_in + 1) return out;
    const auto tail = orbit.subspan(cfg.burn_in);
    const std::size_t half = tail.size() / 2;
    const std::size_t n_refs = std::min(cfg.n_refs, std::max<std::size_t>(half, 1));
    const double eps = cfg.epsilon;

    auto cell = [eps](PlanarPoint p) {
        return std::pair<std::int64_t, std::int64_t>{static_cast<std::int64_t>(std::floor(p.x / eps)),
                                                     static_cast<std::int64_t>(std::floor(p.y / eps))};
    };
    struct Ref {
        std::int64_t i;
        std::int64_t j;
        std::size_t index;
    };
    std::unordered_map<std::uint64_t, std::vector<Ref>> refs;
    std::size_t first_ref = tail.size();
    for (std::size_t r = 0; r < n_refs; ++r) {
        const std::size_t idx = r * std::max<std::size_t>(half, 1) / n_refs;
        const auto [ci, cj] = cell(tail[idx]);
        refs[cell_key(ci, cj)].push_back({ci, cj, idx});
        first_ref = std::min(first_ref, idx);
    }

    std::size_t g = 0;
    for (std::size_t t = first_ref + 1; t < tail.size(); ++t) {
        const auto [ci, cj] = cell(tail[t]);
        for (std::int64_t di = -1; di <= 1; ++di) {
            for (std::int64_t dj = -1; dj <= 1; ++dj) {
                const auto it = refs.find(cell_key(ci + di, cj + dj));
                if (it == refs.end()) continue;
                for (const Ref& ref : it->second) {
                    if (ref.i != ci + di || ref.j != cj + dj || ref.index >= t) continue;
                    if (distance(tail[ref.index], tail[t]) > eps) continue;
                    g = std::gcd(g, t - ref.index);
                    ++out.n_differences;
                }
            }
        }
        if (g == 1) break;
    }
    out.bands = g == 0 ? 1 : static_cast<int>(g);
    return out;
}

int eckstein_gcd(std::span<const PlanarPoint> orbit, const GcdConfig& cfg) {
    return eckstein_gcd_detailed(orbit, cfg).bands;
}

AttractorClass classify_2d(const NormalFormParams& params, PlanarPoint p0, const Budgets2D& budgets) {
    const PeriodDetection det = detect_period_2d(params, p0, budgets.period);
    if (det.fate == OrbitFate::Diverged) return AttractorClass::divergent();
    if (det.cycle) {
        AttractorClass c = AttractorClass::periodic(det.cycle->period);
        c.itinerary = det.cycle->word;
        return c;
    }
    const OrbitRecord orbit = iterate_orbit(params, det.last, budgets.gcd.orbit_len, budgets.period.escape_radius);
    if (orbit.diverged) return AttractorClass::divergent();
    const GcdResult g = eckstein_gcd_detailed(orbit.points, budgets.gcd);
    if (g.n_differences == 0) return AttractorClass::undetermined();
    return AttractorClass::chaotic(g.bands);
}

int boxcount_bands_1d(const ReducedParams& rp, const BoxCountConfig& cfg, std::optional<double> z0) {
    if (!(rp.eta > 0.0 && rp.nu > 0.0)) throw DomainError("boxcount_bands_1d: need eta > 0 and nu > 0");
    if (cfg.n_boxes < 1) throw DomainError("boxcount_bands_1d: need n_boxes >= 1");
    const Interval J = absorbing_interval(rp);
    if (J.is_point()) return 1;
    const OneDMap h(rp);
    const double width = J.length() / cfg.n_boxes;
    std::vector<std::uint8_t> hit(static_cast<std::size_t>(cfg.n_boxes), 0);
    double z = z0.value_or(J.midpoint());
    for (std::size_t n = 0; n < cfg.burn_in; ++n) z = h(z);
    for (std::size_t n = 0; n < cfg.orbit_len; ++n) {
        z = h(z);
        const int b = std::clamp(static_cast<int>(std::floor((z - J.lo) / width)), 0, cfg.n_boxes - 1);
        hit[static_cast<std::size_t>(b)] = 1;
    }
    int runs = 0;
    for (std::size_t b = 0; b < hit.size(); ++b) {
        if (hit[b] && (b == 0 || !hit[b - 1])) ++runs;
    }
    return runs;
}

std::optional<Periodic1D> detect_period_1d(const OneDMap& h, double z0, std::size_t burn_in, int q_max,
                                           double tolerance) {
    double z = z0;
    for (std::size_t n = 0; n < burn_in; ++n) z = h(z);
    const double ref = z;
    Periodic1D out;
    for (int q = 1; q <= q_max; ++q) {
        int k = 0;
        out.points.push_back(z);
        z = h.step(z, &k);
        out.branches.push_back(k);
        if (std::abs(z - ref) <= tolerance) {
            out.period = q;
            return out;
        }
    }
    return std::nullopt;
}

AttractorClass classify_1d(const ReducedParams& rp, const Budgets1D& budgets, std::optional<double> z0) {
    if (!(rp.eta > 0.0 && rp.nu > 0.0)) return AttractorClass::divergent();
    const OneDMap h(rp);
    const double start = z0.value_or(absorbing_interval(rp).midpoint());
    const double tol = budgets.tolerance * std::max(std::abs(rp.eta), std::abs(rp.nu));
    if (auto per = detect_period_1d(h, start, budgets.burn_in, budgets.q_max, tol)) {
        AttractorClass c = AttractorClass::periodic(per->period);
        c.branches = std::move(per->branches);
        return c;
    }
    BoxCountConfig boxes = budgets.boxes;
    boxes.burn_in = 0;
    double z = start;
    for (std::size_t n = 0; n < budgets.burn_in; ++n) z = h(z);
    int bands = boxcount_bands_1d(rp, boxes, z);
    while (bands > 1 && boxes.orbit_len < budgets.confirm_len) {
        boxes.orbit_len = std::min(4 * boxes.orbit_len, budgets.confirm_len);
        const int longer = boxcount_bands_1d(rp, boxes, z);
        if (longer == bands) break;
        bands = longer;
    }
    return AttractorClass::chaotic(bands);
}

RotationResult rotation_number(const ReducedParams& rp, const RotationConfig& cfg) {
    if (!(rp.eta > 0.0 && rp.nu > 0.0)) throw PreconditionError("rotation_number: need eta > 0 and nu > 0");
    if (!(rp.eta > rp.nu)) throw PreconditionError("rotation_number: need eta > nu (increasing branches)");
    if (branch_count(rp) != 2) throw PreconditionError("rotation_number: need exactly two branches over J");
    if (!(delta_invertibility(rp) < 0.0)) throw PreconditionError("rotation_number: need Delta < 0");

    RotationResult out;
    out.k = branch_range(rp).k_min;
    const OneDMap h(rp);
    const double start = absorbing_interval(rp).midpoint();
    const double tol = 1e-9 * std::max(rp.eta, rp.nu);
    if (auto per = detect_period_1d(h, start, cfg.burn_in, cfg.q_max, tol)) {
        const int u = static_cast<int>(std::count(per->branches.begin(), per->branches.end(), out.k));
        out.rational = std::pair{u, per->period};
        out.rho = static_cast<double>(u) / per->period;
        return out;
    }
    double z = start;
    for (std::size_t n = 0; n < cfg.burn_in; ++n) z = h(z);
    const std::size_t half = std::max<std::size_t>(cfg.n_iter / 2, 1);
    std::size_t visits[2] = {0, 0};
    for (int part = 0; part < 2; ++part) {
        for (std::size_t n = 0; n < half; ++n) {
            int k = 0;
            z = h.step(z, &k);
            if (k == out.k) ++visits[part];
        }
    }
    const double r1 = static_cast<double>(visits[0]) / static_cast<double>(half);
    const double r2 = static_cast<double>(visits[1]) / static_cast<double>(half);
    out.rho = 0.5 * (r1 + r2);
    out.resolved = std::abs(r1 - r2) <= cfg.agreement;
    return out;
}

std::vector<MergingHit> merging_condition_scan(const ReducedParams& rp, int j_max, double tol) {
    if (!(rp.eta > 0.0 && rp.nu > 0.0)) throw DomainError("merging_condition_scan: need eta > 0 and nu > 0");
    const BranchRange br = branch_range(rp);
    struct Target {
        int k;
        double z;
    };
    std::vector<Target> targets;
    for (int k = br.k_min; k <= br.k_max; ++k) {
        try {
            const FixedPointInfo fp = fixed_point(rp, k);
            if (fp.admissible && !fp.stable) targets.push_back({k, fp.value});
        } catch (const NoFixedPoint&) {
        }
    }
    std::vector<MergingHit> hits;
    const OneDMap h(rp);
    for (const Endpoint e : {Endpoint::Eta, Endpoint::Nu}) {
        double z = e == Endpoint::Eta ? rp.eta : rp.nu;
        std::vector<bool> done(targets.size(), false);
        for (int j = 1; j <= j_max; ++j) {
            if (!(z > 0.0)) break;
            z = h(z);
            for (std::size_t t = 0; t < targets.size(); ++t) {
                const double d = std::abs(z - targets[t].z);
                if (done[t] || d > tol) continue;
                done[t] = true;
                hits.push_back({j, e, targets[t].k, d});
            }
        }
    }
    return hits;
}

}  // namespace pwlbif
