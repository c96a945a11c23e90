#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "fanocav/commands.hpp"
#include "fanocav/errors.hpp"

namespace py = pybind11;
using namespace fanocav;

namespace {

py::tuple run(const std::string& command, const RunConfig& cfg) {
    std::ostringstream out, err;
    CommandResult r;
    {
        py::gil_scoped_release release;
        r = run_command(parse_command(command), cfg, out, err);
    }
    return py::make_tuple(r.exit_code, r.files, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Double-cavity optomechanics: steady states, probe reflection spectra, Fano analysis";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", error.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", error.ptr());
    py::register_exception<InsufficientFeaturesError>(m, "InsufficientFeaturesError", error.ptr());
    py::register_exception<ParseError>(m, "ParseError", error.ptr());

    py::enum_<Topology>(m, "Topology")
        .value("FixedEnds", Topology::FixedEnds)
        .value("DoubleMovable", Topology::DoubleMovable);
    py::enum_<Method>(m, "Method").value("MatrixSolve", Method::MatrixSolve).value("ClosedForm", Method::ClosedForm);
    py::enum_<ModelKind>(m, "ModelKind")
        .value("GeneralizedLogistic", ModelKind::GeneralizedLogistic)
        .value("Moffat", ModelKind::Moffat);

    py::class_<PhysicalParams>(m, "PhysicalParams")
        .def(py::init<>())
        .def_readwrite("mass1", &PhysicalParams::mass1)
        .def_readwrite("mass2", &PhysicalParams::mass2)
        .def_readwrite("mech_freq1", &PhysicalParams::mech_freq1)
        .def_readwrite("mech_freq2", &PhysicalParams::mech_freq2)
        .def_readwrite("damping1", &PhysicalParams::damping1)
        .def_readwrite("damping2", &PhysicalParams::damping2)
        .def_readwrite("pull1", &PhysicalParams::pull1)
        .def_readwrite("pull2", &PhysicalParams::pull2)
        .def_readwrite("kappa", &PhysicalParams::kappa)
        .def_readwrite("eta", &PhysicalParams::eta)
        .def_readwrite("tunneling", &PhysicalParams::tunneling)
        .def_readwrite("detuning1", &PhysicalParams::detuning1)
        .def_readwrite("detuning2", &PhysicalParams::detuning2)
        .def_readwrite("pump_power", &PhysicalParams::pump_power)
        .def_readwrite("probe_power", &PhysicalParams::probe_power)
        .def_readwrite("pump_wavelength", &PhysicalParams::pump_wavelength)
        .def("omega_m", &PhysicalParams::omega_m)
        .def("validate", &PhysicalParams::validate);
    m.def("paper_preset", &paper_preset, "Reference device parameters (g = 0).");

    py::class_<SteadyState>(m, "SteadyState")
        .def_readonly("topology", &SteadyState::topology)
        .def_readonly("a_bar", &SteadyState::a_bar)
        .def_readonly("b_bar", &SteadyState::b_bar)
        .def_readonly("x1_bar", &SteadyState::x1_bar)
        .def_readonly("x2_bar", &SteadyState::x2_bar)
        .def_readonly("detuning1_eff", &SteadyState::detuning1_eff)
        .def_readonly("detuning2_eff", &SteadyState::detuning2_eff)
        .def_readonly("iterations", &SteadyState::iterations)
        .def_readonly("residual", &SteadyState::residual);
    m.def("solve_steady_state", [](const PhysicalParams& p, Topology t) { return solve_steady_state(p, t); },
          py::arg("params"), py::arg("topology"));
    m.def("intensity_ratio", &intensity_ratio);

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init([](double lo, double hi, int n) { return GridSpec{lo, hi, n}; }), py::arg("omega_min_over_om") = 0.98,
             py::arg("omega_max_over_om") = 1.02, py::arg("n_points") = 4001)
        .def_readwrite("omega_min_over_om", &GridSpec::omega_min_over_om)
        .def_readwrite("omega_max_over_om", &GridSpec::omega_max_over_om)
        .def_readwrite("n_points", &GridSpec::n_points);

    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("g_over_om", &Spectrum::g_over_om)
        .def_readonly("topology", &Spectrum::topology)
        .def_readonly("steady", &Spectrum::steady)
        .def_property_readonly("n_gaps", [](const Spectrum& s) { return s.gaps.size(); })
        .def("omegas", &Spectrum::omegas)
        .def("reflection", &Spectrum::reflection);
    m.def(
        "compute_spectrum",
        [](const PhysicalParams& p, Topology t, const GridSpec& grid, Method method) {
            py::gil_scoped_release release;
            return compute_spectrum(p, t, grid, method);
        },
        py::arg("params"), py::arg("topology"), py::arg("grid") = GridSpec{}, py::arg("method") = Method::MatrixSolve);

    py::class_<DipFeature>(m, "DipFeature")
        .def_readonly("position_over_om", &DipFeature::position_over_om)
        .def_readonly("depth", &DipFeature::depth)
        .def_readonly("prominence", &DipFeature::prominence);
    m.def("find_dips", py::overload_cast<const Spectrum&, double>(&find_dips), py::arg("spectrum"),
          py::arg("prominence") = kDefaultProminence);
    m.def("fano_separation", &fano_separation, py::arg("spectrum"), py::arg("prominence") = kDefaultProminence);

    py::class_<SeparationRow>(m, "SeparationRow")
        .def_readonly("g_over_om", &SeparationRow::g_over_om)
        .def_readonly("separation_over_om", &SeparationRow::separation_over_om)
        .def_readonly("x1_scaled", &SeparationRow::x1_scaled)
        .def_readonly("x2_scaled", &SeparationRow::x2_scaled);
    m.def(
        "separation_vs_g",
        [](const PhysicalParams& p, const GridSpec& grid, double g_min, double g_max, int n_g, double scale) {
            SeparationOptions opts;
            opts.scale = scale;
            py::gil_scoped_release release;
            return separation_vs_g(p, grid, g_min, g_max, n_g, opts).rows;
        },
        py::arg("params"), py::arg("grid") = GridSpec{0.9, 1.1, 20001}, py::arg("g_min") = 0.4, py::arg("g_max") = 1.0,
        py::arg("n_g") = 25, py::arg("scale") = 1e11);

    py::class_<FitResult>(m, "FitResult")
        .def_property_readonly("kind", [](const FitResult& r) { return kind_of(r.model); })
        .def_property_readonly("parameters", [](const FitResult& r) { return parameters(r.model); })
        .def_readonly("chi2_per_dof", &FitResult::chi2_per_dof)
        .def_readonly("n_iterations", &FitResult::n_iterations)
        .def_readonly("converged", &FitResult::converged)
        .def_readonly("degenerate", &FitResult::degenerate)
        .def_readonly("message", &FitResult::message);
    m.def(
        "fit",
        [](ModelKind kind, const std::vector<double>& x, const std::vector<double>& y, std::vector<double> init) {
            if (x.size() != y.size()) throw DomainError("fit: x and y differ in length");
            std::vector<DataPoint> data;
            for (std::size_t i = 0; i < x.size(); ++i) data.push_back({x[i], y[i]});
            if (init.empty()) init = default_inits(kind, data);
            return fit_least_squares(kind, data, init);
        },
        py::arg("kind"), py::arg("x"), py::arg("y"), py::arg("init") = std::vector<double>{});
    m.def(
        "eval_model",
        [](ModelKind kind, const std::vector<double>& params, double x) { return eval_model(make_model(kind, params), x); },
        py::arg("kind"), py::arg("params"), py::arg("x"));

    py::class_<RunConfig>(m, "RunConfig")
        .def_readwrite("params", &RunConfig::params)
        .def_readwrite("topology", &RunConfig::topology)
        .def_readwrite("grid", &RunConfig::grid)
        .def_readwrite("g_over_om", &RunConfig::g_over_om)
        .def_readwrite("method", &RunConfig::method)
        .def_readwrite("output_dir", &RunConfig::output_dir)
        .def_readwrite("emit_svg", &RunConfig::emit_svg)
        .def_readwrite("fit_input", &RunConfig::fit_input);
    m.def("parse_config", &parse_config, py::arg("text") = "");
    m.def("run_command", &run, py::arg("command"), py::arg("config"),
          "Runs a CLI subcommand; returns (exit_code, files, stdout, stderr).");
}
