#include "pwlbif/grid.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pwlbif/errors.hpp"

namespace pwlbif {

int Axis::cell_of(double v) const noexcept {
    const int i = static_cast<int>(std::floor((v - min) / step()));
    return std::clamp(i, 0, n - 1);
}

Axis parse_axis(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = text.find(':', start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (parts.size() != 3) throw ConfigError("axis '" + text + "' is not of the form min:max:n");
    Axis a;
    try {
        std::size_t used = 0;
        a.min = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw ConfigError("");
        a.max = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw ConfigError("");
        a.n = std::stoi(parts[2], &used);
        if (used != parts[2].size()) throw ConfigError("");
    } catch (const std::exception&) {
        throw ConfigError("axis '" + text + "' is not of the form min:max:n");
    }
    if (!(a.min < a.max)) throw ConfigError("axis '" + text + "': empty range");
    if (a.n < 2) throw ConfigError("axis '" + text + "': need at least 2 cells");
    return a;
}

}  // namespace pwlbif
