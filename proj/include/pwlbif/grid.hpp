#pragma once

#include <cstddef>
#include <string>

namespace pwlbif {

/// n equal cells over [min, max]; values are cell centres.
struct Axis {
    double min = 0.0;
    double max = 1.0;
    int n = 2;

    [[nodiscard]] double step() const noexcept { return (max - min) / n; }
    [[nodiscard]] double value(int i) const noexcept { return min + (i + 0.5) * step(); }
    /// Cell containing v, clamped to [0, n).
    [[nodiscard]] int cell_of(double v) const noexcept;
};

/// Parses "min:max:n". Throws ConfigError.
[[nodiscard]] Axis parse_axis(const std::string& text);

struct CellIndex {
    int i = 0;  // axis1
    int j = 0;  // axis2
    friend bool operator==(CellIndex, CellIndex) = default;
};

}  // namespace pwlbif
