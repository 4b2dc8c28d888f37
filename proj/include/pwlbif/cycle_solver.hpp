#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pwlbif/core_maps.hpp"
#include "pwlbif/grid.hpp"

namespace pwlbif {

/// Symbolic word over {L, R}. Read left to right, the first symbol is the piece
/// applied first.
class Itinerary {
public:
    Itinerary() = default;
    explicit Itinerary(std::vector<Side> word);

    /// Accepts plain words ("LLRR") and powers ("L^8R^2", "L8R2").
    /// Throws ConfigError on anything else or on an empty word.
    [[nodiscard]] static Itinerary parse(std::string_view text);

    [[nodiscard]] const std::vector<Side>& word() const noexcept { return word_; }
    [[nodiscard]] std::size_t size() const noexcept { return word_.size(); }
    [[nodiscard]] std::size_t count(Side s) const noexcept;

    /// Lexicographically smallest rotation, L < R.
    [[nodiscard]] Itinerary canonical() const;
    [[nodiscard]] Itinerary rotated(std::size_t shift) const;

    /// "LLLLLLLLRR".
    [[nodiscard]] std::string str() const;
    /// "L^8R^2".
    [[nodiscard]] std::string compact() const;

    friend bool operator==(const Itinerary&, const Itinerary&) = default;
    friend auto operator<=>(const Itinerary& a, const Itinerary& b) { return a.word_ <=> b.word_; }

private:
    std::vector<Side> word_;
};

/// Points within this distance of the switching line match either symbol.
inline constexpr double kAdmissibilityTolerance = 1e-10;
inline constexpr double kSingularTolerance = 1e-12;

struct CycleSolution {
    std::vector<PlanarPoint> points;
    std::array<std::complex<double>, 2> multipliers{};
    bool admissible = false;
    bool stable = false;
    /// det(I - M) ~ 0: no isolated cycle, points is empty.
    bool degenerate = false;
};

/// Composition of the pieces along the word.
[[nodiscard]] AffinePiece compose(const NormalFormParams& params, const Itinerary& itin);

[[nodiscard]] std::array<std::complex<double>, 2> eigenvalues(const AffinePiece& a);

/// Solves (I - M) x = t for the composed map and propagates the orbit.
[[nodiscard]] CycleSolution solve_cycle(const NormalFormParams& params, const Itinerary& itin);

/// Two varied coordinates of a base parameter point.
struct ParamGrid {
    NormalFormParams base;
    ParamName p1 = ParamName::DeltaR;
    Axis axis1;
    ParamName p2 = ParamName::TauR;
    Axis axis2;

    [[nodiscard]] NormalFormParams at(int i, int j) const;
    [[nodiscard]] std::size_t cell_count() const noexcept {
        return static_cast<std::size_t>(axis1.n) * static_cast<std::size_t>(axis2.n);
    }
};

/// Flood fill from the seed cells over cells where `itin` has a stable
/// admissible cycle (4-neighbour connectivity). Row-major mask,
/// mask[j * axis1.n + i]. Cells not connected to a seed stay 0.
[[nodiscard]] std::vector<std::uint8_t> grow_region(const ParamGrid& grid, const Itinerary& itin,
                                                    const std::vector<CellIndex>& seeds, int n_workers = 1);

/// Period found by point recurrence on a forward orbit.
struct DetectedCycle {
    int period = 0;
    Itinerary word;  // canonical
    PlanarPoint point;
};

struct OrbitBudget {
    std::size_t burn_in = 10'000;
    int q_max = 200;
    double tolerance = 1e-9;
    double escape_radius = kDefaultEscapeRadius;
};

enum class OrbitFate { Periodic, Diverged, Other };

struct PeriodDetection {
    OrbitFate fate = OrbitFate::Other;
    std::optional<DetectedCycle> cycle;
    /// Orbit point reached after the burn-in (for follow-up analysis).
    PlanarPoint last;
};

/// Iterates burn_in steps, then looks for the smallest q <= q_max with
/// |f^q(z) - z| < tolerance.
[[nodiscard]] PeriodDetection detect_period_2d(const NormalFormParams& params, PlanarPoint p0,
                                               const OrbitBudget& budget = {});

struct Candidate {
    Itinerary itinerary;
    /// Cells of the fine grid whose coarse cell produced this itinerary.
    std::vector<CellIndex> seeds;
};

struct CandidateOptions {
    int coarse_resolution = 20;
    int starts_per_cell = 3;
    OrbitBudget budget;
    std::uint64_t seed = 0;
    int n_workers = 1;
};

/// Forward orbits from random initial points at the centre of each coarse
/// cell; periodic ones contribute their canonical word. Sorted by word.
[[nodiscard]] std::vector<Candidate> candidate_itineraries(const ParamGrid& grid, const CandidateOptions& opts = {});

}  // namespace pwlbif
