#include "pwlbif/scan_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "pwlbif/errors.hpp"

namespace pwlbif {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint8_t palette(const AttractorClass& c) noexcept {
    switch (c.kind) {
        case AttractorClass::Kind::Periodic: return static_cast<std::uint8_t>(128 + 16 * (c.period % 8));
        case AttractorClass::Kind::Chaotic: return static_cast<std::uint8_t>(16 + 12 * (c.bands % 8));
        case AttractorClass::Kind::Divergent: return 255;
        case AttractorClass::Kind::Undetermined: return 110;
    }
    return 110;
}

namespace {

template <class T>
std::string optional_text(const std::optional<T>& v) {
    if (!v) return {};
    if constexpr (std::is_integral_v<T>) {
        return std::to_string(*v);
    } else {
        return format_number(*v);
    }
}

std::string period_text(const AttractorClass& c) {
    return c.kind == AttractorClass::Kind::Periodic ? std::to_string(c.period) : std::string{};
}

std::string bands_text(const AttractorClass& c) {
    return c.kind == AttractorClass::Kind::Chaotic ? std::to_string(c.bands) : std::string{};
}

std::ofstream open_out(const std::filesystem::path& p, bool binary = false) {
    std::ofstream os(p, binary ? std::ios::binary : std::ios::out);
    if (!os) throw ConfigError("cannot open '" + p.string() + "' for writing");
    return os;
}

}  // namespace

void write_scan_csv(const ScanResult& result, std::ostream& os) {
    const Axis& a1 = result.config.axis1.axis;
    const Axis& a2 = result.config.axis2.axis;
    os << kScanCsvHeader << '\n';
    for (int j = 0; j < a2.n; ++j) {
        for (int i = 0; i < a1.n; ++i) {
            const CellResult& c = result.at(i, j);
            os << format_number(a1.value(i)) << ',' << format_number(a2.value(j)) << ',' << c.cls.tag() << ','
               << period_text(c.cls) << ',' << bands_text(c.cls) << ',' << optional_text(c.eta) << ','
               << optional_text(c.nu) << ',' << optional_text(c.N) << ',' << optional_text(c.delta) << ','
               << optional_text(c.rho) << '\n';
        }
    }
}

void write_pgm(const ScanResult& result, std::ostream& os) {
    const Axis& a1 = result.config.axis1.axis;
    const Axis& a2 = result.config.axis2.axis;
    os << "P5\n" << a1.n << ' ' << a2.n << "\n255\n";
    for (int j = a2.n - 1; j >= 0; --j) {
        for (int i = 0; i < a1.n; ++i) os.put(static_cast<char>(palette(result.at(i, j).cls)));
    }
}

void write_boundaries_csv(const std::vector<Polyline>& lines, std::ostream& os) {
    os << "polyline,label,axis1,axis2\n";
    for (std::size_t k = 0; k < lines.size(); ++k) {
        for (const auto& [x, y] : lines[k].points) {
            os << k << ',' << lines[k].label << ',' << format_number(x) << ',' << format_number(y) << '\n';
        }
    }
}

void write_slice_csv(const std::vector<SlicePoint>& points, std::ostream& os) {
    os << "t,axis1,axis2,class,period,bands,eta,nu,rho,z,x,y\n";
    for (const SlicePoint& sp : points) {
        const std::string head = format_number(sp.t) + ',' + format_number(sp.v1) + ',' + format_number(sp.v2) + ',' +
                                 sp.cell.cls.tag() + ',' + period_text(sp.cell.cls) + ',' + bands_text(sp.cell.cls) +
                                 ',' + optional_text(sp.cell.eta) + ',' + optional_text(sp.cell.nu) + ',' +
                                 optional_text(sp.cell.rho);
        if (sp.support_z.empty() && sp.support_xy.empty()) os << head << ",,,\n";
        for (const double z : sp.support_z) os << head << ',' << format_number(z) << ",,\n";
        for (const PlanarPoint& p : sp.support_xy) {
            os << head << ",," << format_number(p.x) << ',' << format_number(p.y) << '\n';
        }
    }
}

void write_mask_csv(const ParamGrid& grid, const std::vector<std::uint8_t>& mask, std::ostream& os) {
    os << to_string(grid.p1) << ',' << to_string(grid.p2) << ",flag\n";
    for (int j = 0; j < grid.axis2.n; ++j) {
        for (int i = 0; i < grid.axis1.n; ++i) {
            const std::size_t idx = static_cast<std::size_t>(j) * static_cast<std::size_t>(grid.axis1.n) +
                                    static_cast<std::size_t>(i);
            os << format_number(grid.axis1.value(i)) << ',' << format_number(grid.axis2.value(j)) << ','
               << static_cast<int>(mask[idx]) << '\n';
        }
    }
}

nlohmann::ordered_json config_to_json(const ScanConfig& config) {
    nlohmann::ordered_json j;
    j["family"] = config.family == Family::OneD ? "1d" : "2d";
    if (config.family == Family::OneD) {
        j["sigma"] = config.sigma;
    } else {
        j["tauL"] = config.fixed.tau_L;
        j["deltaL"] = config.fixed.delta_L;
        j["tauR"] = config.fixed.tau_R;
        j["deltaR"] = config.fixed.delta_R;
        j["m"] = config.m;
        j["coarse_resolution"] = config.coarse_resolution;
        j["p0"] = {config.p0.x, config.p0.y};
    }
    for (const auto* a : {&config.axis1, &config.axis2}) {
        j[a == &config.axis1 ? "axis1" : "axis2"] = {
            {"name", a->name}, {"min", a->axis.min}, {"max", a->axis.max}, {"n", a->axis.n}};
    }
    if (config.slice) {
        nlohmann::ordered_json s;
        if (config.slice->ratio) {
            s["ratio"] = *config.slice->ratio;
        } else {
            s["from"] = {config.slice->from.first, config.slice->from.second};
            s["to"] = {config.slice->to.first, config.slice->to.second};
        }
        j["slice"] = s;
    }
    const ScanBudgets& b = config.budgets;
    j["budgets"] = {{"burn_in_1d", b.one_d.burn_in},
                    {"q_max", b.one_d.q_max},
                    {"n_boxes", b.one_d.boxes.n_boxes},
                    {"orbit_len_1d", b.one_d.boxes.orbit_len},
                    {"confirm_len_1d", b.one_d.confirm_len},
                    {"burn_in_2d", b.two_d.period.burn_in},
                    {"gcd_epsilon", b.two_d.gcd.epsilon},
                    {"gcd_refs", b.two_d.gcd.n_refs},
                    {"orbit_len_2d", b.two_d.gcd.orbit_len},
                    {"rotation_iterations", b.rotation.n_iter}};
    j["n_workers"] = config.n_workers;
    return j;
}

nlohmann::ordered_json metadata_json(const nlohmann::ordered_json& config, std::uint64_t seed,
                                     const std::vector<int>& resolution, double runtime_seconds,
                                     const nlohmann::ordered_json& extra) {
    nlohmann::ordered_json j;
    j["config"] = config;
    j["seed"] = seed;
    j["resolution"] = resolution;
    j["runtime_seconds"] = runtime_seconds;
    j["version"] = library_version();
    for (const auto& [k, v] : extra.items()) j[k] = v;
    return j;
}

void write_scan_outputs(const ScanResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        auto os = open_out(dir / "scan.csv");
        write_scan_csv(result, os);
    }
    {
        auto os = open_out(dir / "scan.pgm", true);
        write_pgm(result, os);
    }
    {
        auto os = open_out(dir / "boundaries.csv");
        write_boundaries_csv(extract_boundaries(result), os);
    }
    nlohmann::ordered_json extra;
    extra["pgm_layout"] = kPgmLayout;
    nlohmann::ordered_json grown = nlohmann::ordered_json::array();
    for (const Itinerary& w : result.grown) grown.push_back(w.compact());
    if (!grown.empty()) extra["grown_itineraries"] = grown;
    auto os = open_out(dir / "metadata.json");
    os << metadata_json(config_to_json(result.config), result.config.seed,
                        {result.config.axis1.axis.n, result.config.axis2.axis.n}, result.runtime_seconds, extra)
              .dump(2)
       << '\n';
}

}  // namespace pwlbif
