#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

namespace pwlbif {

/// Parameter point (tau_L, delta_L, tau_R, delta_R) of the two-dimensional
/// border-collision normal form.
struct NormalFormParams {
    double tau_L = 0.0;
    double delta_L = 0.0;
    double tau_R = 0.0;
    double delta_R = 0.0;

    /// tau_L > delta_L + 1, 0 <= delta_L < 1, delta_R > 0: the left piece has a
    /// saddle fixed point in the open left half-plane.
    [[nodiscard]] bool in_Xi() const noexcept;
};

enum class ParamName { TauL, DeltaL, TauR, DeltaR };

[[nodiscard]] double get(const NormalFormParams& p, ParamName name) noexcept;
void set(NormalFormParams& p, ParamName name, double value) noexcept;
/// Accepts tauL / deltaL / tauR / deltaR (case-insensitive, '_' ignored).
[[nodiscard]] ParamName parse_param_name(std::string_view text);
[[nodiscard]] std::string_view to_string(ParamName name) noexcept;

struct PlanarPoint {
    double x = 0.0;
    double y = 0.0;

    friend PlanarPoint operator+(PlanarPoint a, PlanarPoint b) noexcept { return {a.x + b.x, a.y + b.y}; }
    friend PlanarPoint operator-(PlanarPoint a, PlanarPoint b) noexcept { return {a.x - b.x, a.y - b.y}; }
    friend PlanarPoint operator*(double s, PlanarPoint a) noexcept { return {s * a.x, s * a.y}; }
    friend bool operator==(PlanarPoint, PlanarPoint) = default;
};

[[nodiscard]] double max_norm(PlanarPoint p) noexcept;
[[nodiscard]] double distance(PlanarPoint a, PlanarPoint b) noexcept;

enum class Side { L, R };

/// p -> M p + t with M = [[m11, m12], [m21, m22]].
struct AffinePiece {
    double m11 = 1.0, m12 = 0.0, m21 = 0.0, m22 = 1.0;
    double b1 = 0.0, b2 = 0.0;

    [[nodiscard]] PlanarPoint operator()(PlanarPoint p) const noexcept {
        return {m11 * p.x + m12 * p.y + b1, m21 * p.x + m22 * p.y + b2};
    }
    [[nodiscard]] double det() const noexcept { return m11 * m22 - m12 * m21; }
    [[nodiscard]] double trace() const noexcept { return m11 + m22; }

    /// (*this) after `first`, i.e. x -> this(first(x)).
    [[nodiscard]] AffinePiece after(const AffinePiece& first) const noexcept;
};

[[nodiscard]] AffinePiece left_piece(const NormalFormParams& p) noexcept;
[[nodiscard]] AffinePiece right_piece(const NormalFormParams& p) noexcept;
[[nodiscard]] AffinePiece piece(const NormalFormParams& p, Side side) noexcept;

[[nodiscard]] PlanarPoint apply_left(const NormalFormParams& p, PlanarPoint q) noexcept;
[[nodiscard]] PlanarPoint apply_right(const NormalFormParams& p, PlanarPoint q) noexcept;

/// One step of f. Points on the switching line use the left piece; by
/// continuity both pieces give (y + 1, 0) there.
[[nodiscard]] PlanarPoint apply(const NormalFormParams& p, PlanarPoint q) noexcept;

/// Side whose piece apply() uses for q.
[[nodiscard]] inline Side side_of(PlanarPoint q) noexcept { return q.x <= 0.0 ? Side::L : Side::R; }

enum class Region { OmegaL, OmegaR, Sigma };

[[nodiscard]] Region region(PlanarPoint p) noexcept;
/// Third quadrant {x <= 0, y < 0}.
[[nodiscard]] bool in_Q3(PlanarPoint p) noexcept;

/// Saddle fixed point Y of the left piece, its multipliers lambda < 1 < sigma,
/// and the intersections S, U of E^s(Y), E^u(Y) with the switching line.
struct SaddleData {
    PlanarPoint Y;
    double lambda = 0.0;
    double sigma = 0.0;
    PlanarPoint S;
    PlanarPoint U;
};

/// Throws DomainError unless params.in_Xi().
[[nodiscard]] SaddleData saddle_data(const NormalFormParams& params);

struct ABCoords {
    double a = 0.0;
    double b = 0.0;
};

/// Coordinates with P = Y + a (S - Y) + b (U - Y). The switching line is
/// a + b = 1, and f_L scales a by lambda and b by sigma.
[[nodiscard]] ABCoords ab_coords(const SaddleData& saddle, PlanarPoint p) noexcept;
[[nodiscard]] double b_coord(const SaddleData& saddle, PlanarPoint p) noexcept;
[[nodiscard]] PlanarPoint from_ab(const SaddleData& saddle, ABCoords c) noexcept;

/// General affine frame P = origin + a (s_point - origin) + b (u_point - origin),
/// used for saddles that are not the fixed point of f_L.
struct AffineFrame {
    PlanarPoint origin;
    PlanarPoint s_point;
    PlanarPoint u_point;

    [[nodiscard]] ABCoords to_ab(PlanarPoint p) const;
    [[nodiscard]] PlanarPoint from_ab(ABCoords c) const noexcept;
};

[[nodiscard]] AffineFrame frame_of(const SaddleData& saddle) noexcept;

inline constexpr double kDefaultEscapeRadius = 1e6;

struct OrbitRecord {
    /// points[0] is the initial point; points[i] = f^i(p0).
    std::vector<PlanarPoint> points;
    bool diverged = false;
    /// Index i of the first iterate with max-norm above the escape radius.
    std::size_t escape_index = 0;
};

/// n >= 1 iterates of f from p0, stopping early if the max-norm exceeds
/// escape_radius.
[[nodiscard]] OrbitRecord iterate_orbit(const NormalFormParams& params, PlanarPoint p0, std::size_t n,
                                        double escape_radius = kDefaultEscapeRadius);

}  // namespace pwlbif
