#include "pwlbif/core_maps.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "pwlbif/errors.hpp"

namespace pwlbif {

bool NormalFormParams::in_Xi() const noexcept {
    return tau_L > delta_L + 1.0 && delta_L >= 0.0 && delta_L < 1.0 && delta_R > 0.0;
}

double get(const NormalFormParams& p, ParamName name) noexcept {
    switch (name) {
        case ParamName::TauL: return p.tau_L;
        case ParamName::DeltaL: return p.delta_L;
        case ParamName::TauR: return p.tau_R;
        case ParamName::DeltaR: return p.delta_R;
    }
    return 0.0;
}

void set(NormalFormParams& p, ParamName name, double value) noexcept {
    switch (name) {
        case ParamName::TauL: p.tau_L = value; break;
        case ParamName::DeltaL: p.delta_L = value; break;
        case ParamName::TauR: p.tau_R = value; break;
        case ParamName::DeltaR: p.delta_R = value; break;
    }
}

ParamName parse_param_name(std::string_view text) {
    std::string key;
    for (char c : text) {
        if (c == '_' || c == ' ') continue;
        key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (key == "taul") return ParamName::TauL;
    if (key == "deltal") return ParamName::DeltaL;
    if (key == "taur") return ParamName::TauR;
    if (key == "deltar") return ParamName::DeltaR;
    throw ConfigError("unknown normal-form parameter '" + std::string(text) + "'");
}

std::string_view to_string(ParamName name) noexcept {
    switch (name) {
        case ParamName::TauL: return "tauL";
        case ParamName::DeltaL: return "deltaL";
        case ParamName::TauR: return "tauR";
        case ParamName::DeltaR: return "deltaR";
    }
    return "?";
}

double max_norm(PlanarPoint p) noexcept { return std::max(std::abs(p.x), std::abs(p.y)); }

double distance(PlanarPoint a, PlanarPoint b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

AffinePiece AffinePiece::after(const AffinePiece& first) const noexcept {
    AffinePiece out;
    out.m11 = m11 * first.m11 + m12 * first.m21;
    out.m12 = m11 * first.m12 + m12 * first.m22;
    out.m21 = m21 * first.m11 + m22 * first.m21;
    out.m22 = m21 * first.m12 + m22 * first.m22;
    out.b1 = m11 * first.b1 + m12 * first.b2 + b1;
    out.b2 = m21 * first.b1 + m22 * first.b2 + b2;
    return out;
}

AffinePiece left_piece(const NormalFormParams& p) noexcept {
    return {p.tau_L, 1.0, -p.delta_L, 0.0, 1.0, 0.0};
}

AffinePiece right_piece(const NormalFormParams& p) noexcept {
    return {p.tau_R, 1.0, -p.delta_R, 0.0, 1.0, 0.0};
}

AffinePiece piece(const NormalFormParams& p, Side side) noexcept {
    return side == Side::L ? left_piece(p) : right_piece(p);
}

PlanarPoint apply_left(const NormalFormParams& p, PlanarPoint q) noexcept {
    return {p.tau_L * q.x + q.y + 1.0, -p.delta_L * q.x};
}

PlanarPoint apply_right(const NormalFormParams& p, PlanarPoint q) noexcept {
    return {p.tau_R * q.x + q.y + 1.0, -p.delta_R * q.x};
}

PlanarPoint apply(const NormalFormParams& p, PlanarPoint q) noexcept {
    return q.x <= 0.0 ? apply_left(p, q) : apply_right(p, q);
}

Region region(PlanarPoint p) noexcept {
    if (p.x < 0.0) return Region::OmegaL;
    if (p.x > 0.0) return Region::OmegaR;
    return Region::Sigma;
}

bool in_Q3(PlanarPoint p) noexcept { return p.x <= 0.0 && p.y < 0.0; }

SaddleData saddle_data(const NormalFormParams& params) {
    if (!params.in_Xi()) {
        throw DomainError("saddle_data: parameters outside Xi (need tauL > deltaL + 1, 0 <= deltaL < 1, deltaR > 0)");
    }
    const double tau = params.tau_L;
    const double det = params.delta_L;
    // Larger root first; the smaller one from the product of roots.
    const double sigma = 0.5 * (tau + std::sqrt(tau * tau - 4.0 * det));
    const double lambda = det == 0.0 ? 0.0 : det / sigma;

    SaddleData s;
    s.lambda = lambda;
    s.sigma = sigma;
    const double denom = tau - det - 1.0;
    s.Y = {-1.0 / denom, det / denom};
    s.S = {0.0, -sigma / (sigma - 1.0)};
    s.U = {0.0, lambda / (1.0 - lambda)};
    return s;
}

ABCoords ab_coords(const SaddleData& s, PlanarPoint p) noexcept {
    const double lam = s.lambda;
    const double sig = s.sigma;
    const double a = (sig - 1.0) / (sig - lam) * (lam - (1.0 - lam) * (lam * p.x + p.y));
    const double b = (1.0 - lam) / (sig - lam) * (sig + (sig - 1.0) * (sig * p.x + p.y));
    return {a, b};
}

double b_coord(const SaddleData& s, PlanarPoint p) noexcept {
    const double lam = s.lambda;
    const double sig = s.sigma;
    return (1.0 - lam) / (sig - lam) * (sig + (sig - 1.0) * (sig * p.x + p.y));
}

PlanarPoint from_ab(const SaddleData& s, ABCoords c) noexcept {
    return s.Y + c.a * (s.S - s.Y) + c.b * (s.U - s.Y);
}

ABCoords AffineFrame::to_ab(PlanarPoint p) const {
    const PlanarPoint ds = s_point - origin;
    const PlanarPoint du = u_point - origin;
    const PlanarPoint d = p - origin;
    const double det = ds.x * du.y - ds.y * du.x;
    if (det == 0.0) throw DomainError("AffineFrame: degenerate frame");
    return {(d.x * du.y - d.y * du.x) / det, (ds.x * d.y - ds.y * d.x) / det};
}

PlanarPoint AffineFrame::from_ab(ABCoords c) const noexcept {
    return origin + c.a * (s_point - origin) + c.b * (u_point - origin);
}

AffineFrame frame_of(const SaddleData& s) noexcept { return {s.Y, s.S, s.U}; }

OrbitRecord iterate_orbit(const NormalFormParams& params, PlanarPoint p0, std::size_t n, double escape_radius) {
    if (n < 1) throw DomainError("iterate_orbit: n must be >= 1");
    if (!(escape_radius > 0.0)) throw DomainError("iterate_orbit: escape_radius must be positive");
    OrbitRecord rec;
    rec.points.reserve(n + 1);
    rec.points.push_back(p0);
    PlanarPoint p = p0;
    for (std::size_t i = 1; i <= n; ++i) {
        p = apply(params, p);
        rec.points.push_back(p);
        if (!(max_norm(p) <= escape_radius)) {
            rec.diverged = true;
            rec.escape_index = i;
            break;
        }
    }
    return rec;
}

}  // namespace pwlbif
