#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pwlbif/atlas_scan.hpp"
#include "pwlbif/attractor_classify.hpp"
#include "pwlbif/core_maps.hpp"
#include "pwlbif/cycle_solver.hpp"
#include "pwlbif/errors.hpp"
#include "pwlbif/homoclinic_params.hpp"
#include "pwlbif/one_d_map.hpp"
#include "pwlbif/return_map.hpp"
#include "pwlbif/scan_io.hpp"

namespace py = pybind11;
using namespace pwlbif;

namespace {

std::pair<ParamName, ParamName> names(const std::pair<std::string, std::string>& p) {
    return {parse_param_name(p.first), parse_param_name(p.second)};
}

py::dict class_dict(const AttractorClass& c) {
    py::dict d;
    d["tag"] = c.tag();
    d["label"] = c.label();
    d["period"] = c.period;
    d["bands"] = c.bands;
    d["itinerary"] = c.itinerary ? py::cast(c.itinerary->compact()) : py::none();
    d["branches"] = c.branches;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Piecewise-linear border-collision maps and their one-dimensional reduction";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ValidityError>(m, "ValidityError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<NoFixedPoint>(m, "NoFixedPoint", PyExc_ArithmeticError);
    py::register_exception<NoConvergence>(m, "NoConvergence", PyExc_RuntimeError);

    py::class_<NormalFormParams>(m, "NormalFormParams")
        .def(py::init<double, double, double, double>(), py::arg("tauL"), py::arg("deltaL"), py::arg("tauR"),
             py::arg("deltaR"))
        .def_readwrite("tauL", &NormalFormParams::tau_L)
        .def_readwrite("deltaL", &NormalFormParams::delta_L)
        .def_readwrite("tauR", &NormalFormParams::tau_R)
        .def_readwrite("deltaR", &NormalFormParams::delta_R)
        .def("in_Xi", &NormalFormParams::in_Xi)
        .def("__repr__", [](const NormalFormParams& p) {
            std::ostringstream os;
            os << "NormalFormParams(tauL=" << p.tau_L << ", deltaL=" << p.delta_L << ", tauR=" << p.tau_R
               << ", deltaR=" << p.delta_R << ")";
            return os.str();
        });

    py::class_<ReducedParams>(m, "ReducedParams")
        .def(py::init([](double eta, double nu, double sigma) { return ReducedParams{eta, nu, sigma}; }),
             py::arg("eta"), py::arg("nu"), py::arg("sigma"))
        .def_readwrite("eta", &ReducedParams::eta)
        .def_readwrite("nu", &ReducedParams::nu)
        .def_readwrite("sigma", &ReducedParams::sigma)
        .def_readonly("m", &ReducedParams::m)
        .def_readonly("lam", &ReducedParams::lambda)
        .def("__repr__", [](const ReducedParams& r) {
            std::ostringstream os;
            os << "ReducedParams(eta=" << r.eta << ", nu=" << r.nu << ", sigma=" << r.sigma << ")";
            return os.str();
        });

    m.def(
        "apply",
        [](const NormalFormParams& p, double x, double y) {
            const PlanarPoint q = apply(p, {x, y});
            return std::pair{q.x, q.y};
        },
        py::arg("params"), py::arg("x"), py::arg("y"));

    m.def(
        "orbit",
        [](const NormalFormParams& p, double x, double y, std::size_t n) {
            std::vector<std::pair<double, double>> out;
            for (const PlanarPoint& q : iterate_orbit(p, {x, y}, n).points) out.emplace_back(q.x, q.y);
            return out;
        },
        py::arg("params"), py::arg("x"), py::arg("y"), py::arg("n"),
        "Orbit points including the start; stops early on escape.");

    m.def(
        "saddle",
        [](const NormalFormParams& p) {
            const SaddleData s = saddle_data(p);
            py::dict d;
            d["Y"] = std::pair{s.Y.x, s.Y.y};
            d["S"] = std::pair{s.S.x, s.S.y};
            d["U"] = std::pair{s.U.x, s.U.y};
            d["lam"] = s.lambda;
            d["sigma"] = s.sigma;
            return d;
        },
        py::arg("params"));

    m.def(
        "reduce",
        [](const NormalFormParams& p, int m_) {
            ReductionSpec spec;
            spec.m = m_;
            spec.params = p;
            return reduced_params_generic(spec).rp;
        },
        py::arg("params"), py::arg("m") = 2);

    m.def(
        "period3_frame",
        [](const NormalFormParams& p) {
            const Period3Frame f = period3_saddle_frame(p);
            py::dict d;
            d["eta"] = f.eta;
            d["nu"] = f.nu;
            d["nu_prime"] = f.nu_prime;
            d["sigma"] = f.sigma;
            d["lam"] = f.lambda;
            d["Ytilde"] = std::pair{f.Ytilde.x, f.Ytilde.y};
            return d;
        },
        py::arg("params"));

    m.def(
        "locate_codim2",
        [](const NormalFormParams& guess, std::pair<std::string, std::string> free, int m_, double tol) {
            return locate_codim2(names(free), guess, m_, {100, tol});
        },
        py::arg("guess"), py::arg("free") = std::pair<std::string, std::string>{"deltaR", "tauR"}, py::arg("m") = 2,
        py::arg("tol") = 1e-12);

    m.def("h", &eval_h, py::arg("rp"), py::arg("z"));
    m.def("branch_index", &branch_index, py::arg("z"), py::arg("sigma"));
    m.def("branch_count", &branch_count, py::arg("rp"));
    m.def("delta", &delta_invertibility, py::arg("rp"));
    m.def(
        "triangle",
        [](double sigma, int k) { return triangle_Pk(sigma, k).vertices; }, py::arg("sigma"), py::arg("k"));
    m.def(
        "in_triangle", [](double sigma, int k, double eta, double nu) { return triangle_Pk(sigma, k).contains(eta, nu); },
        py::arg("sigma"), py::arg("k"), py::arg("eta"), py::arg("nu"));
    m.def(
        "fixed_point",
        [](const ReducedParams& rp, int k) {
            const FixedPointInfo f = fixed_point(rp, k);
            py::dict d;
            d["value"] = f.value;
            d["slope"] = f.slope;
            d["admissible"] = f.admissible;
            d["stable"] = f.stable;
            return d;
        },
        py::arg("rp"), py::arg("k"));

    m.def(
        "solve_cycle",
        [](const NormalFormParams& p, const std::string& word) {
            const CycleSolution c = solve_cycle(p, Itinerary::parse(word));
            py::dict d;
            std::vector<std::pair<double, double>> pts;
            for (const PlanarPoint& q : c.points) pts.emplace_back(q.x, q.y);
            d["points"] = pts;
            d["multipliers"] = std::vector<std::complex<double>>(c.multipliers.begin(), c.multipliers.end());
            d["admissible"] = c.admissible;
            d["stable"] = c.stable;
            d["degenerate"] = c.degenerate;
            return d;
        },
        py::arg("params"), py::arg("itinerary"));

    m.def(
        "classify_2d",
        [](const NormalFormParams& p, double x, double y) { return class_dict(classify_2d(p, {x, y})); },
        py::arg("params"), py::arg("x") = 0.1, py::arg("y") = -0.1);
    m.def(
        "classify_1d", [](const ReducedParams& rp) { return class_dict(classify_1d(rp)); }, py::arg("rp"));
    m.def(
        "boxcount_bands",
        [](const ReducedParams& rp, int n_boxes, std::size_t orbit_len) {
            return boxcount_bands_1d(rp, {n_boxes, orbit_len, 10'000});
        },
        py::arg("rp"), py::arg("n_boxes") = 1000, py::arg("orbit_len") = 1'000'000);
    m.def(
        "rotation_number",
        [](const ReducedParams& rp) {
            const RotationResult r = rotation_number(rp);
            py::dict d;
            d["rho"] = r.rho;
            d["rational"] = r.rational ? py::cast(*r.rational) : py::none();
            d["resolved"] = r.resolved;
            d["k"] = r.k;
            return d;
        },
        py::arg("rp"));

    m.def(
        "psi_stats",
        [](const NormalFormParams& p, int m_, std::size_t n_samples, std::uint64_t seed) {
            ReductionSpec spec;
            spec.m = m_;
            spec.params = p;
            const Psi0Stats s = sample_psi(p, reduced_params_generic(spec).rp, {n_samples, seed, 1});
            py::dict d;
            d["epsilon"] = s.epsilon;
            d["fraction_outside"] = s.fraction_outside;
            d["sup_error"] = s.sup_error;
            d["c"] = s.c;
            d["n_psi"] = s.n_psi;
            d["n_psi0"] = s.n_psi0;
            return d;
        },
        py::arg("params"), py::arg("m") = 2, py::arg("n_samples") = 10'000, py::arg("seed") = 0);

    m.def(
        "scan_1d_csv",
        [](double sigma, std::tuple<double, double, int> eta, std::tuple<double, double, int> nu, int workers,
           std::uint64_t seed) {
            ScanConfig c;
            c.family = Family::OneD;
            c.sigma = sigma;
            c.axis1 = {"eta", {std::get<0>(eta), std::get<1>(eta), std::get<2>(eta)}};
            c.axis2 = {"nu", {std::get<0>(nu), std::get<1>(nu), std::get<2>(nu)}};
            c.n_workers = workers;
            c.seed = seed;
            validate(c);
            ScanResult r;
            {
                py::gil_scoped_release release;
                r = scan(c);
            }
            std::ostringstream os;
            write_scan_csv(r, os);
            return os.str();
        },
        py::arg("sigma"), py::arg("eta"), py::arg("nu"), py::arg("workers") = 1, py::arg("seed") = 0,
        "One-dimensional atlas scan; returns the scan CSV text.");

    m.attr("__version__") = library_version();
}
