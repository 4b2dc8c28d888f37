#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "pwlbif/atlas_scan.hpp"
#include "pwlbif/cycle_solver.hpp"

namespace pwlbif {

/// Shortest round-trip text for a double ("%.17g").
[[nodiscard]] std::string format_number(double v);

/// Gray level of a class: periodic 128 + 16 (period mod 8), chaotic
/// 16 + 12 (bands mod 8), divergent 255, undetermined 110.
[[nodiscard]] std::uint8_t palette(const AttractorClass& c) noexcept;

inline constexpr const char* kScanCsvHeader = "axis1,axis2,class,period,bands,eta,nu,N,delta,rho";
inline constexpr const char* kPgmLayout =
    "P5, one pixel per cell, axis1 increases to the right, axis2 increases upward (first row is the largest axis2)";

/// One row per cell, axis2 outer and axis1 inner, both increasing.
void write_scan_csv(const ScanResult& result, std::ostream& os);
void write_pgm(const ScanResult& result, std::ostream& os);
void write_boundaries_csv(const std::vector<Polyline>& lines, std::ostream& os);
void write_slice_csv(const std::vector<SlicePoint>& points, std::ostream& os);
/// axis1,axis2,flag with cell-centre coordinates.
void write_mask_csv(const ParamGrid& grid, const std::vector<std::uint8_t>& mask, std::ostream& os);

[[nodiscard]] nlohmann::ordered_json config_to_json(const ScanConfig& config);

/// Keys in order: config, seed, resolution, runtime_seconds, version, then
/// whatever `extra` holds.
[[nodiscard]] nlohmann::ordered_json metadata_json(const nlohmann::ordered_json& config, std::uint64_t seed,
                                                   const std::vector<int>& resolution, double runtime_seconds,
                                                   const nlohmann::ordered_json& extra = nlohmann::ordered_json::object());

/// scan.csv, scan.pgm, boundaries.csv and metadata.json in `dir` (created if
/// needed).
void write_scan_outputs(const ScanResult& result, const std::filesystem::path& dir);

}  // namespace pwlbif
