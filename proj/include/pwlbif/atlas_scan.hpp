#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pwlbif/attractor_classify.hpp"
#include "pwlbif/core_maps.hpp"
#include "pwlbif/cycle_solver.hpp"
#include "pwlbif/grid.hpp"
#include "pwlbif/one_d_map.hpp"

namespace pwlbif {

enum class Family { TwoD, OneD };

/// Axis over a named parameter: tauL/deltaL/tauR/deltaR for TwoD,
/// eta/nu/sigma for OneD.
struct ScanAxis {
    std::string name;
    Axis axis;
};

/// One-parameter line through the plane of the two scan axes. With `ratio`
/// (OneD only) the line is nu = ratio * eta parametrised by eta; otherwise it
/// runs from `from` (t = 0) to `to` (t = 1).
struct SliceLine {
    std::optional<double> ratio;
    std::pair<double, double> from{0.0, 0.0};
    std::pair<double, double> to{0.0, 0.0};
};

struct ScanBudgets {
    Budgets1D one_d{5'000, 200, 1e-9, {1000, 20'000, 0}, 1'000'000};
    Budgets2D two_d{{5'000, 200, 1e-9, kDefaultEscapeRadius}, {1e-4, 500, 20'000, 0}};
    RotationConfig rotation{20'000, 5'000, 200, 1e-3};
    /// Extra starts (one per branch over J, at most this many) used to find
    /// coexisting stable fixed points of h.
    int fixed_point_starts = 16;
    std::size_t fixed_point_steps = 2'000;
};

struct ScanConfig {
    Family family = Family::OneD;
    NormalFormParams fixed;  // TwoD: the two non-scanned coordinates
    double sigma = 1.5;      // OneD, unless sigma is an axis
    int m = 2;               // TwoD: reduction used for the auxiliary columns
    ScanAxis axis1{"eta", {0.0, 0.12, 200}};
    ScanAxis axis2{"nu", {0.0, 0.12, 200}};
    std::optional<SliceLine> slice;
    ScanBudgets budgets;
    std::uint64_t seed = 0;
    int n_workers = 1;
    /// TwoD: coarse grid for candidate itineraries (0 disables region growing).
    int coarse_resolution = 20;
    PlanarPoint p0{0.1, -0.1};
};

/// Throws ConfigError on unknown or repeated axis names, or bad axes.
void validate(const ScanConfig& config);

struct CellResult {
    AttractorClass cls;
    std::optional<double> eta;
    std::optional<double> nu;
    std::optional<int> N;
    std::optional<double> delta;
    std::optional<double> rho;
    /// OneD: branches k with an attracting fixed point found from some start.
    std::vector<int> fixed_branches;
};

struct Polyline {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

struct ScanResult {
    ScanConfig config;
    /// Row-major: cells[j * axis1.n + i].
    std::vector<CellResult> cells;
    /// TwoD: itineraries whose grown regions were overlaid.
    std::vector<Itinerary> grown;
    double runtime_seconds = 0.0;
    std::string version;

    [[nodiscard]] const CellResult& at(int i, int j) const {
        return cells[static_cast<std::size_t>(j) * static_cast<std::size_t>(config.axis1.axis.n) +
                     static_cast<std::size_t>(i)];
    }
};

/// Classifies every cell; the output depends on config and seed only.
[[nodiscard]] ScanResult scan(const ScanConfig& config);

/// Classification of a single cell of a scan (used by scan and slice_diagram).
[[nodiscard]] CellResult classify_cell(const ScanConfig& config, double v1, double v2, std::uint64_t stream);

/// Reduced parameters for a OneD point (v1, v2) on the named axes.
[[nodiscard]] ReducedParams one_d_params(const ScanConfig& config, double v1, double v2);
/// Normal-form parameters for a TwoD point.
[[nodiscard]] NormalFormParams two_d_params(const ScanConfig& config, double v1, double v2);

/// Marching squares on each label's indicator (threshold 0.5 on cell
/// centres), vertices at cell-edge midpoints, segments chained into polylines.
[[nodiscard]] std::vector<Polyline> extract_boundaries(const std::vector<std::string>& labels, const Axis& a1,
                                                       const Axis& a2);
[[nodiscard]] std::vector<Polyline> extract_boundaries(const ScanResult& result);

struct SlicePoint {
    double t = 0.0;
    double v1 = 0.0;
    double v2 = 0.0;
    CellResult cell;
    std::vector<double> support_z;         // OneD
    std::vector<PlanarPoint> support_xy;   // TwoD
};

/// n_points values of t evenly spaced over [t_min, t_max] (inclusive).
/// Each point carries up to n_support attractor samples after the burn-in
/// (exactly one per point of a periodic orbit).
/// Throws ConfigError if config.slice is unset.
[[nodiscard]] std::vector<SlicePoint> slice_diagram(const ScanConfig& config, int n_points, double t_min, double t_max,
                                                    int n_support = 200);

/// git describe of the source tree at configure time.
[[nodiscard]] std::string library_version();

}  // namespace pwlbif
