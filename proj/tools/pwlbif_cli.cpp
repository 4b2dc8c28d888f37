// Command-line front end: parameter reduction, codimension-two location,
// cycles, scans and slices. Every subcommand accepts --config FILE with flat
// key=value lines; flags given on the command line win over the file.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pwlbif/atlas_scan.hpp"
#include "pwlbif/attractor_classify.hpp"
#include "pwlbif/cycle_solver.hpp"
#include "pwlbif/errors.hpp"
#include "pwlbif/homoclinic_params.hpp"
#include "pwlbif/parallel.hpp"
#include "pwlbif/return_map.hpp"
#include "pwlbif/scan_io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace pwlbif;

namespace {

/// Terminal output; the JSON files written with --out keep full precision.
std::string shortest(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(what + ": '" + text + "' is not a number");
}

/// "a=1,b=2" -> ordered pairs.
std::vector<std::pair<std::string, double>> parse_assignments(const std::string& text) {
    std::vector<std::pair<std::string, double>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("expected name=value, got '" + item + "'");
        out.emplace_back(trim(item.substr(0, eq)), parse_double(trim(item.substr(eq + 1)), item));
    }
    return out;
}

std::pair<double, double> parse_pair(const std::string& text, char sep) {
    const auto pos = text.find(sep);
    if (pos == std::string::npos) throw ConfigError("expected two values separated by '" + std::string(1, sep) + "'");
    return {parse_double(trim(text.substr(0, pos)), text), parse_double(trim(text.substr(pos + 1)), text)};
}

/// Splices key=value lines of the --config file into the argument list right
/// after the subcommand name, skipping keys already given as flags.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::optional<std::string> file;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            file = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            file = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (!file) return args;
    std::ifstream in(*file);
    if (!in) throw ConfigError("cannot read config file '" + *file + "'");
    auto given = [&](const std::string& flag) {
        for (const std::string& a : args) {
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        }
        return false;
    };
    std::vector<std::string> extra;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(*file + ":" + std::to_string(lineno) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        for (char& c : key) {
            if (c == '_') c = '-';
        }
        const std::string flag = "--" + key;
        if (!given(flag)) extra.push_back(flag + "=" + value);
    }
    const std::size_t at = !args.empty() && args[0].rfind("-", 0) != 0 ? 1 : args.size();
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), extra.begin(), extra.end());
    return args;
}

struct ParamOptions {
    std::map<std::string, std::string> text;  // tauL -> "2" or "1.4:1.6:200"

    void add(CLI::App* app, bool required) {
        for (const char* name : {"tauL", "deltaL", "tauR", "deltaR"}) {
            auto* opt = app->add_option(std::string("--") + name, text[name], std::string("value of ") + name);
            if (required) opt->required();
        }
    }

    [[nodiscard]] NormalFormParams values() const {
        NormalFormParams p;
        for (const auto& [name, v] : text) {
            if (!v.empty()) set(p, parse_param_name(name), parse_double(v, name));
        }
        return p;
    }

    /// Fixed values plus exactly two ranged coordinates.
    void split(NormalFormParams& fixed, std::vector<std::pair<ParamName, Axis>>& ranges) const {
        for (const auto& [name, v] : text) {
            if (v.empty()) continue;
            if (v.find(':') != std::string::npos) {
                ranges.emplace_back(parse_param_name(name), parse_axis(v));
            } else {
                set(fixed, parse_param_name(name), parse_double(v, name));
            }
        }
    }
};

void write_json(const fs::path& path, const json& j) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open '" + path.string() + "' for writing");
    os << j.dump(2) << '\n';
}

json params_json(const NormalFormParams& p) {
    return {{"tauL", p.tau_L}, {"deltaL", p.delta_L}, {"tauR", p.tau_R}, {"deltaR", p.delta_R}};
}

/// Optional result + metadata files for the quick commands.
void maybe_write(const std::string& out, const std::string& name, const json& result, const json& config,
                 std::uint64_t seed, double seconds) {
    if (out.empty()) return;
    fs::create_directories(out);
    write_json(fs::path(out) / (name + ".json"), result);
    write_json(fs::path(out) / "metadata.json", metadata_json(config, seed, {}, seconds));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void add_budget_options(CLI::App* app, ScanConfig& cfg) {
    app->add_option("--burn-in", cfg.budgets.one_d.burn_in, "transient iterations before classification");
    app->add_option("--orbit-len", cfg.budgets.one_d.boxes.orbit_len, "iterations used for band counting");
    app->add_option("--n-boxes", cfg.budgets.one_d.boxes.n_boxes, "boxes over J for 1D band counting");
    app->add_option("--confirm-len", cfg.budgets.one_d.confirm_len, "longest orbit used to re-check 1D band counts above one");
    app->add_option("--q-max", cfg.budgets.one_d.q_max, "longest period searched");
    app->add_option("--rotation-iterations", cfg.budgets.rotation.n_iter, "iterations for rotation numbers");
    app->add_option("--seed", cfg.seed, "random seed");
    app->add_option("--workers", cfg.n_workers, "worker threads")->check(CLI::PositiveNumber);
}

/// The 2D budgets follow the shared flags.
void sync_budgets(ScanConfig& cfg) {
    cfg.budgets.two_d.period.burn_in = cfg.budgets.one_d.burn_in;
    cfg.budgets.two_d.period.q_max = cfg.budgets.one_d.q_max;
    cfg.budgets.two_d.gcd.orbit_len = cfg.budgets.one_d.boxes.orbit_len;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bifurcation analysis of the border-collision normal form and its one-dimensional reduction",
                 "pwlbif"};
    app.footer("Every subcommand also accepts --config FILE with key=value lines; flags on the command line win.");
    app.require_subcommand(1);
    app.set_version_flag("--version", library_version());

    // params-reduce
    ParamOptions pr_params;
    int pr_m = 2;
    bool pr_period3 = false;
    bool pr_closed = false;
    std::string pr_out;
    auto* pr = app.add_subcommand("params-reduce", "print eta, nu, sigma for a parameter point");
    pr_params.add(pr, true);
    pr->add_option("--m", pr_m, "right-piece steps of the connection")->check(CLI::Range(2, 1000));
    pr->add_flag("--period3", pr_period3, "reduce around the saddle RLR-cycle");
    pr->add_flag("--closed-form", pr_closed, "use the closed forms (m = 2, or m = 3 with deltaL = 0)");
    pr->add_option("--out", pr_out, "directory for reduction.json and metadata.json");

    // locate-codim2
    std::string lc_fix;
    std::string lc_guess;
    int lc_m = 2;
    double lc_tol = 1e-12;
    std::string lc_out;
    auto* lc = app.add_subcommand("locate-codim2", "solve eta = nu = 0 in two free parameters");
    lc->add_option("--fix", lc_fix, "fixed coordinates, e.g. tauL=2,deltaL=0.75")->required();
    lc->add_option("--guess", lc_guess, "initial guess for the free coordinates, e.g. deltaR=1.4,tauR=-0.45")
        ->required();
    lc->add_option("--m", lc_m, "right-piece steps of the connection")->check(CLI::Range(2, 1000));
    lc->add_option("--tol", lc_tol, "residual tolerance");
    lc->add_option("--out", lc_out, "directory for codim2.json and metadata.json");

    // verify-reduction
    ParamOptions vr_params;
    int vr_m = 2;
    PsiSampleOptions vr_opts;
    std::string vr_toward;
    int vr_points = 6;
    double vr_eps0 = 0.06;
    double vr_ratio = 0.0;
    std::string vr_out;
    auto* vr = app.add_subcommand("verify-reduction", "sample the first-return map against h");
    vr_params.add(vr, true);
    vr->add_option("--m", vr_m, "right-piece steps of the connection")->check(CLI::Range(2, 1000));
    vr->add_option("--samples", vr_opts.n_samples, "samples of Psi per parameter point");
    vr->add_option("--seed", vr_opts.seed, "random seed");
    vr->add_option("--workers", vr_opts.n_workers, "worker threads")->check(CLI::PositiveNumber);
    vr->add_option("--toward", vr_toward,
                   "treat the parameters as the codimension-two point and sample a ray toward this point, "
                   "e.g. deltaR=1.4,tauR=-0.45");
    vr->add_option("--points", vr_points, "ray points");
    vr->add_option("--eps0", vr_eps0, "epsilon at the first ray point");
    vr->add_option("--ratio", vr_ratio, "epsilon ratio between ray points (default 1/sigma^2)");
    vr->add_option("--out", vr_out, "directory for verify.json and metadata.json");

    // cycle
    ParamOptions cy_params;
    std::string cy_word;
    std::string cy_out;
    int cy_workers = 1;
    auto* cy = app.add_subcommand("cycle", "solve for the cycle of an itinerary; with two ranges, grow its region");
    cy_params.add(cy, true);
    cy->add_option("--itinerary", cy_word, "word such as L^8R^2 or LLRR")->required();
    cy->add_option("--workers", cy_workers, "worker threads")->check(CLI::PositiveNumber);
    cy->add_option("--out", cy_out, "directory for mask.csv / cycle.json and metadata.json");

    // scan-1d
    ScanConfig s1;
    s1.family = Family::OneD;
    std::string s1_eta = "0:0.12:200";
    std::string s1_nu = "0:0.12:200";
    std::string s1_sigma = "1.5";
    std::string s1_out = "scan1d";
    auto* sc1 = app.add_subcommand("scan-1d", "classify attractors of h over an (eta, nu) grid");
    sc1->add_option("--sigma", s1_sigma, "sigma, or min:max:n to scan it");
    sc1->add_option("--eta", s1_eta, "eta value or min:max:n");
    sc1->add_option("--nu", s1_nu, "nu value or min:max:n");
    add_budget_options(sc1, s1);
    sc1->add_option("--out", s1_out, "output directory");

    // scan-2d
    ScanConfig s2;
    s2.family = Family::TwoD;
    ParamOptions s2_params;
    std::string s2_out = "scan2d";
    std::string s2_p0 = "0.1,-0.1";
    auto* sc2 = app.add_subcommand("scan-2d", "classify attractors of the planar map over a parameter grid");
    s2_params.add(sc2, true);
    sc2->add_option("--m", s2.m, "m used for the reduced-parameter columns");
    sc2->add_option("--coarse", s2.coarse_resolution, "coarse grid for candidate itineraries (0: off)");
    sc2->add_option("--p0", s2_p0, "initial point x,y");
    sc2->add_option("--gcd-epsilon", s2.budgets.two_d.gcd.epsilon, "match radius of the band counter");
    sc2->add_option("--gcd-refs", s2.budgets.two_d.gcd.n_refs, "reference points of the band counter");
    add_budget_options(sc2, s2);
    sc2->add_option("--out", s2_out, "output directory");

    // slice
    ScanConfig sl;
    std::string sl_family = "1d";
    std::string sl_sigma = "1.5";
    ParamOptions sl_params;
    std::optional<double> sl_ratio;
    std::string sl_range;
    std::string sl_from;
    std::string sl_to;
    int sl_points = 1000;
    int sl_support = 200;
    std::string sl_out = "slice";
    std::string sl_p0 = "0.1,-0.1";
    auto* slc = app.add_subcommand("slice", "one-parameter bifurcation diagram along a line");
    slc->add_option("--family", sl_family, "1d or 2d")->check(CLI::IsMember({"1d", "2d"}));
    slc->add_option("--sigma", sl_sigma, "sigma (1d)");
    sl_params.add(slc, false);
    slc->add_option("--ratio", sl_ratio, "nu/eta of a 1d slice; the slice parameter is eta");
    slc->add_option("--range", sl_range, "tmin:tmax (eta for a ratio slice, default 0:1 for from/to lines)");
    slc->add_option("--from", sl_from, "start point, e.g. eta=0.01,nu=0.02 or deltaR=1.4,tauR=-0.45");
    slc->add_option("--to", sl_to, "end point, same two names as --from");
    slc->add_option("--points", sl_points, "parameter values")->check(CLI::PositiveNumber);
    slc->add_option("--support", sl_support, "attractor points recorded per parameter value");
    slc->add_option("--p0", sl_p0, "initial point x,y (2d)");
    add_budget_options(slc, sl);
    slc->add_option("--out", sl_out, "output directory");

    // basin
    ParamOptions bs_params;
    std::string bs_x = "-1:1:100";
    std::string bs_y = "-1:1:100";
    int bs_workers = 1;
    Budgets2D bs_budgets;
    bs_budgets.period.burn_in = 5'000;
    bs_budgets.gcd.orbit_len = 20'000;
    bs_budgets.gcd.burn_in = 0;
    bs_budgets.gcd.n_refs = 500;
    std::string bs_out = "basin";
    auto* bs = app.add_subcommand("basin", "classify initial conditions on a grid at one parameter point");
    bs_params.add(bs, true);
    bs->add_option("--x", bs_x, "min:max:n");
    bs->add_option("--y", bs_y, "min:max:n");
    bs->add_option("--workers", bs_workers, "worker threads")->check(CLI::PositiveNumber);
    bs->add_option("--out", bs_out, "output directory");

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = expand_config(args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (*pr) {
            const NormalFormParams p = pr_params.values();
            json out;
            if (pr_period3) {
                const Period3Frame f = period3_saddle_frame(p);
                std::cout << "eta=" << shortest(f.eta) << " nu=" << shortest(f.nu) << " sigma=" << shortest(f.sigma)
                          << '\n'
                          << "lambda=" << shortest(f.lambda) << " nu_prime=" << shortest(f.nu_prime) << '\n';
                out = {{"eta", f.eta}, {"nu", f.nu}, {"sigma", f.sigma}, {"lambda", f.lambda}, {"nu_prime", f.nu_prime}};
            } else {
                ReductionSpec spec;
                spec.m = pr_m;
                spec.params = p;
                Reduction red = reduced_params_generic(spec);
                if (pr_closed) {
                    if (pr_m != 2 && pr_m != 3) throw DomainError("closed forms exist for m = 2 and m = 3");
                    const auto [eta, nu] = pr_m == 2 ? reduced_params_closed_form_m2(p)
                                                     : reduced_params_closed_form_m3_deltaL0(p);
                    red.rp.eta = eta;
                    red.rp.nu = nu;
                    red.eps = make_epsilon_record(eta, nu, red.rp.lambda.value_or(0.0), red.rp.sigma);
                }
                std::cout << "eta=" << shortest(red.rp.eta) << " nu=" << shortest(red.rp.nu)
                          << " sigma=" << shortest(red.rp.sigma) << '\n'
                          << "lambda=" << shortest(red.rp.lambda.value_or(0.0))
                          << " epsilon=" << shortest(red.eps.epsilon) << " c=" << shortest(red.eps.c) << '\n';
                out = {{"eta", red.rp.eta},     {"nu", red.rp.nu},   {"sigma", red.rp.sigma},
                       {"lambda", *red.rp.lambda}, {"epsilon", red.eps.epsilon}, {"m", pr_m}};
                if (red.rp.eta > 0.0 && red.rp.nu > 0.0) {
                    out["N"] = branch_count(red.rp);
                    out["delta"] = delta_invertibility(red.rp);
                    std::cout << "N=" << branch_count(red.rp) << " delta=" << shortest(delta_invertibility(red.rp))
                              << '\n';
                }
            }
            json cfg = params_json(p);
            cfg["m"] = pr_m;
            cfg["period3"] = pr_period3;
            maybe_write(pr_out, "reduction", out, cfg, 0, seconds_since(t0));
        } else if (*lc) {
            NormalFormParams guess;
            for (const auto& [name, v] : parse_assignments(lc_fix)) set(guess, parse_param_name(name), v);
            const auto free = parse_assignments(lc_guess);
            if (free.size() != 2) throw ConfigError("--guess must name exactly two parameters");
            for (const auto& [name, v] : free) set(guess, parse_param_name(name), v);
            const std::pair names{parse_param_name(free[0].first), parse_param_name(free[1].first)};
            Codim2Options opts;
            opts.tolerance = lc_tol;
            const NormalFormParams sol = locate_codim2(names, guess, lc_m, opts);
            ReductionSpec spec;
            spec.m = lc_m;
            spec.params = sol;
            const Reduction red = reduced_params_generic(spec);
            std::cout << to_string(names.first) << '=' << shortest(get(sol, names.first)) << ' '
                      << to_string(names.second) << '=' << shortest(get(sol, names.second)) << '\n'
                      << "residual eta=" << shortest(red.rp.eta) << " nu=" << shortest(red.rp.nu) << '\n';
            json out = params_json(sol);
            out["residual_eta"] = red.rp.eta;
            out["residual_nu"] = red.rp.nu;
            maybe_write(lc_out, "codim2", out, {{"fix", lc_fix}, {"guess", lc_guess}, {"m", lc_m}}, 0,
                        seconds_since(t0));
        } else if (*vr) {
            const NormalFormParams p = vr_params.values();
            json out;
            auto stats_json = [](const Psi0Stats& s) {
                return json{{"epsilon", s.epsilon},   {"fraction_outside", s.fraction_outside},
                            {"sup_error", s.sup_error}, {"c", s.c},
                            {"n_psi", s.n_psi},       {"n_psi0", s.n_psi0},
                            {"n_diverged", s.n_diverged}, {"n_budget", s.n_budget}};
            };
            if (vr_toward.empty()) {
                ReductionSpec spec;
                spec.m = vr_m;
                spec.params = p;
                const Reduction red = reduced_params_generic(spec);
                const Psi0Stats s = sample_psi(p, red.rp, vr_opts);
                std::cout << "epsilon=" << shortest(s.epsilon) << " fraction_outside=" << shortest(s.fraction_outside)
                          << " sup_error=" << shortest(s.sup_error) << " c=" << shortest(s.c) << '\n'
                          << "samples=" << s.n_psi << " in_psi0=" << s.n_psi0 << " diverged=" << s.n_diverged
                          << " budget=" << s.n_budget << '\n';
                out = stats_json(s);
            } else {
                const auto dir = parse_assignments(vr_toward);
                if (dir.size() != 2) throw ConfigError("--toward must name exactly two parameters");
                const std::pair names{parse_param_name(dir[0].first), parse_param_name(dir[1].first)};
                const std::pair d{dir[0].second - get(p, names.first), dir[1].second - get(p, names.second)};
                const double ratio = vr_ratio > 0.0 ? vr_ratio : 1.0 / std::pow(saddle_data(p).sigma, 2);
                const auto ray = geometric_ray(p, names, d, vr_m, vr_eps0, ratio, vr_points);
                const ScalingReport rep = verify_theorem1_scaling(ray, p, vr_m, vr_opts);
                out["points"] = json::array();
                for (std::size_t i = 0; i < ray.size(); ++i) {
                    const Psi0Stats& s = rep.stats[i];
                    std::cout << to_string(names.first) << '=' << shortest(get(ray[i], names.first)) << ' '
                              << to_string(names.second) << '=' << shortest(get(ray[i], names.second))
                              << " epsilon=" << shortest(s.epsilon) << " fraction_outside="
                              << shortest(s.fraction_outside) << " sup_error=" << shortest(s.sup_error) << '\n';
                    json pj = stats_json(s);
                    pj["params"] = params_json(ray[i]);
                    out["points"].push_back(pj);
                }
                std::cout << "c_expected=" << shortest(rep.c_expected);
                if (rep.sup_error_slope) std::cout << " sup_error_slope=" << shortest(*rep.sup_error_slope);
                if (rep.fraction_slope) std::cout << " fraction_slope=" << shortest(*rep.fraction_slope);
                std::cout << '\n';
                out["c_expected"] = rep.c_expected;
                out["sup_error_slope"] = rep.sup_error_slope ? json(*rep.sup_error_slope) : json(nullptr);
                out["fraction_slope"] = rep.fraction_slope ? json(*rep.fraction_slope) : json(nullptr);
            }
            json cfg = params_json(p);
            cfg["m"] = vr_m;
            cfg["samples"] = vr_opts.n_samples;
            if (!vr_toward.empty()) cfg["toward"] = vr_toward;
            maybe_write(vr_out, "verify", out, cfg, vr_opts.seed, seconds_since(t0));
        } else if (*cy) {
            const Itinerary itin = Itinerary::parse(cy_word);
            NormalFormParams fixed;
            std::vector<std::pair<ParamName, Axis>> ranges;
            cy_params.split(fixed, ranges);
            if (ranges.empty()) {
                const CycleSolution sol = solve_cycle(fixed, itin);
                std::cout << "itinerary=" << itin.compact() << " period=" << itin.size() << '\n';
                if (sol.degenerate) {
                    std::cout << "degenerate=true\n";
                } else {
                    for (std::size_t i = 0; i < sol.points.size(); ++i) {
                        std::cout << "point " << i << ' ' << shortest(sol.points[i].x) << ' '
                                  << shortest(sol.points[i].y) << '\n';
                    }
                    for (const auto& mu : sol.multipliers) {
                        std::cout << "multiplier " << shortest(mu.real()) << ' ' << shortest(mu.imag()) << '\n';
                    }
                    std::cout << "admissible=" << (sol.admissible ? "true" : "false")
                              << " stable=" << (sol.stable ? "true" : "false") << '\n';
                }
                json out{{"itinerary", itin.compact()}, {"degenerate", sol.degenerate},
                         {"admissible", sol.admissible}, {"stable", sol.stable}};
                out["points"] = json::array();
                for (const auto& q : sol.points) out["points"].push_back({q.x, q.y});
                maybe_write(cy_out, "cycle", out, {{"params", params_json(fixed)}, {"itinerary", cy_word}}, 0,
                            seconds_since(t0));
            } else {
                if (ranges.size() != 2) throw ConfigError("give either no ranges or exactly two");
                const ParamGrid grid{fixed, ranges[0].first, ranges[0].second, ranges[1].first, ranges[1].second};
                // Seeds: a sparse lattice of cells that test positive.
                const int stride1 = std::max(1, grid.axis1.n / 20);
                const int stride2 = std::max(1, grid.axis2.n / 20);
                std::vector<CellIndex> seeds;
                for (int j = stride2 / 2; j < grid.axis2.n; j += stride2) {
                    for (int i = stride1 / 2; i < grid.axis1.n; i += stride1) {
                        if (solve_cycle(grid.at(i, j), itin).stable) seeds.push_back({i, j});
                    }
                }
                const auto mask = seeds.empty() ? std::vector<std::uint8_t>(grid.cell_count(), 0)
                                                : grow_region(grid, itin, seeds, cy_workers);
                const auto marked = std::count(mask.begin(), mask.end(), std::uint8_t{1});
                std::cout << "itinerary=" << itin.compact() << " cells=" << grid.cell_count() << " stable=" << marked
                          << '\n';
                if (cy_out.empty()) cy_out = "cycle";
                fs::create_directories(cy_out);
                {
                    std::ofstream os(fs::path(cy_out) / "mask.csv");
                    write_mask_csv(grid, mask, os);
                }
                json cfg{{"params", params_json(fixed)}, {"itinerary", itin.compact()}};
                cfg["axis1"] = {{"name", to_string(grid.p1)}, {"min", grid.axis1.min}, {"max", grid.axis1.max},
                                {"n", grid.axis1.n}};
                cfg["axis2"] = {{"name", to_string(grid.p2)}, {"min", grid.axis2.min}, {"max", grid.axis2.max},
                                {"n", grid.axis2.n}};
                write_json(fs::path(cy_out) / "metadata.json",
                           metadata_json(cfg, 0, {grid.axis1.n, grid.axis2.n}, seconds_since(t0)));
            }
        } else if (*sc1) {
            std::vector<ScanAxis> axes;
            for (const auto& [name, text] : {std::pair{"eta", &s1_eta}, {"nu", &s1_nu}, {"sigma", &s1_sigma}}) {
                if (text->find(':') != std::string::npos) {
                    axes.push_back({name, parse_axis(*text)});
                } else if (std::string(name) == "sigma") {
                    s1.sigma = parse_double(*text, name);
                }
            }
            if (axes.size() != 2) throw ConfigError("scan-1d needs exactly two of --eta/--nu/--sigma as ranges");
            s1.axis1 = axes[0];
            s1.axis2 = axes[1];
            const ScanResult res = scan(s1);
            write_scan_outputs(res, s1_out);
            std::cout << "wrote " << res.cells.size() << " cells to " << s1_out << " in "
                      << shortest(res.runtime_seconds) << " s\n";
        } else if (*sc2) {
            std::vector<std::pair<ParamName, Axis>> ranges;
            s2_params.split(s2.fixed, ranges);
            if (ranges.size() != 2) throw ConfigError("scan-2d needs exactly two parameters given as min:max:n");
            s2.axis1 = {std::string(to_string(ranges[0].first)), ranges[0].second};
            s2.axis2 = {std::string(to_string(ranges[1].first)), ranges[1].second};
            const auto [x0, y0] = parse_pair(s2_p0, ',');
            s2.p0 = {x0, y0};
            sync_budgets(s2);
            const ScanResult res = scan(s2);
            write_scan_outputs(res, s2_out);
            std::cout << "wrote " << res.cells.size() << " cells to " << s2_out << " in "
                      << shortest(res.runtime_seconds) << " s\n";
        } else if (*slc) {
            sl.family = sl_family == "1d" ? Family::OneD : Family::TwoD;
            SliceLine line;
            double t_min = 0.0;
            double t_max = 1.0;
            if (sl.family == Family::OneD) {
                sl.sigma = parse_double(sl_sigma, "sigma");
                sl.axis1 = {"eta", {0.0, 1.0, 2}};
                sl.axis2 = {"nu", {0.0, 1.0, 2}};
            } else {
                std::vector<std::pair<ParamName, Axis>> unused;
                sl_params.split(sl.fixed, unused);
                if (!unused.empty()) throw ConfigError("slice parameters are single values; use --from/--to");
                const auto [x0, y0] = parse_pair(sl_p0, ',');
                sl.p0 = {x0, y0};
            }
            if (sl_ratio) {
                if (sl.family != Family::OneD) throw ConfigError("--ratio needs --family 1d");
                if (sl_range.empty()) throw ConfigError("--ratio needs --range etamin:etamax");
                line.ratio = *sl_ratio;
                std::tie(t_min, t_max) = parse_pair(sl_range, ':');
            } else {
                if (sl_from.empty() || sl_to.empty()) throw ConfigError("give --ratio or both --from and --to");
                const auto from = parse_assignments(sl_from);
                const auto to = parse_assignments(sl_to);
                if (from.size() != 2 || to.size() != 2 || from[0].first != to[0].first ||
                    from[1].first != to[1].first) {
                    throw ConfigError("--from and --to must name the same two parameters in the same order");
                }
                line.from = {from[0].second, from[1].second};
                line.to = {to[0].second, to[1].second};
                sl.axis1 = {from[0].first, {0.0, 1.0, 2}};
                sl.axis2 = {from[1].first, {0.0, 1.0, 2}};
                if (!sl_range.empty()) std::tie(t_min, t_max) = parse_pair(sl_range, ':');
            }
            sl.slice = line;
            sync_budgets(sl);
            const auto points = slice_diagram(sl, sl_points, t_min, t_max, sl_support);
            fs::create_directories(sl_out);
            {
                std::ofstream os(fs::path(sl_out) / "slice.csv");
                write_slice_csv(points, os);
            }
            json cfg = config_to_json(sl);
            cfg.erase("axis1");
            cfg.erase("axis2");
            cfg["slice_axes"] = {sl.axis1.name, sl.axis2.name};
            cfg["range"] = {t_min, t_max};
            write_json(fs::path(sl_out) / "metadata.json",
                       metadata_json(cfg, sl.seed, {sl_points}, seconds_since(t0)));
            std::cout << "wrote " << points.size() << " slice points to " << sl_out << '\n';
        } else if (*bs) {
            const NormalFormParams p = bs_params.values();
            const Axis ax = parse_axis(bs_x);
            const Axis ay = parse_axis(bs_y);
            std::vector<AttractorClass> cls(static_cast<std::size_t>(ax.n) * static_cast<std::size_t>(ay.n));
            parallel_for(cls.size(), bs_workers, [&](std::size_t idx) {
                const int i = static_cast<int>(idx % static_cast<std::size_t>(ax.n));
                const int j = static_cast<int>(idx / static_cast<std::size_t>(ax.n));
                cls[idx] = classify_2d(p, {ax.value(i), ay.value(j)}, bs_budgets);
            });
            fs::create_directories(bs_out);
            std::ofstream os(fs::path(bs_out) / "basin.csv");
            os << "x,y,class,period,bands,itinerary\n";
            for (int j = 0; j < ay.n; ++j) {
                for (int i = 0; i < ax.n; ++i) {
                    const AttractorClass& c = cls[static_cast<std::size_t>(j) * static_cast<std::size_t>(ax.n) +
                                                  static_cast<std::size_t>(i)];
                    os << format_number(ax.value(i)) << ',' << format_number(ay.value(j)) << ',' << c.tag() << ','
                       << (c.kind == AttractorClass::Kind::Periodic ? std::to_string(c.period) : "") << ','
                       << (c.kind == AttractorClass::Kind::Chaotic ? std::to_string(c.bands) : "") << ','
                       << (c.itinerary ? c.itinerary->compact() : "") << '\n';
                }
            }
            json cfg = params_json(p);
            cfg["x"] = bs_x;
            cfg["y"] = bs_y;
            write_json(fs::path(bs_out) / "metadata.json", metadata_json(cfg, 0, {ax.n, ay.n}, seconds_since(t0)));
            std::cout << "wrote " << cls.size() << " initial conditions to " << bs_out << '\n';
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
