#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fhnhopf/bifurcation.hpp"
#include "fhnhopf/center_manifold.hpp"
#include "fhnhopf/errors.hpp"
#include "fhnhopf/model.hpp"
#include "fhnhopf/pde_sim.hpp"
#include "fhnhopf/spectral.hpp"

namespace py = pybind11;
using namespace fhn;

namespace {

ModelParams make_params(double epsilon, double d, double a, double p, std::size_t nx) {
  ModelParams params;
  params.epsilon = epsilon;
  params.d = d;
  params.a = a;
  params.p = p;
  params.nx = nx;
  params.validate();
  return params;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hopf bifurcation toolkit for the heterogeneous FitzHugh-Nagumo system";

  auto base_error = py::register_exception<Error>(m, "Error");
  py::register_exception<ConfigError>(m, "ConfigError", base_error.ptr());
  py::register_exception<DomainError>(m, "DomainError", base_error.ptr());
  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", base_error.ptr());
  py::register_exception<BracketNotFound>(m, "BracketNotFound", numerical.ptr());
  py::register_exception<NoSignChange>(m, "NoSignChange", numerical.ptr());
  py::register_exception<SingularSystem>(m, "SingularSystem", numerical.ptr());
  py::register_exception<DivergenceError>(m, "DivergenceError", numerical.ptr());

  m.def("f_cubic", &f_cubic);
  m.def("f_prime", &f_prime);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init(&make_params), py::arg("epsilon") = 0.1, py::arg("d") = 1.0, py::arg("a") = 1.0,
           py::arg("p") = 0.0, py::arg("nx") = 201)
      .def_readwrite("epsilon", &ModelParams::epsilon)
      .def_readwrite("d", &ModelParams::d)
      .def_readwrite("a", &ModelParams::a)
      .def_readwrite("p", &ModelParams::p)
      .def_readwrite("nx", &ModelParams::nx)
      .def_property_readonly("dx", &ModelParams::dx)
      .def("with_p", &ModelParams::with_p)
      .def("with_nx", &ModelParams::with_nx)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(epsilon=" + std::to_string(p.epsilon) + ", d=" + std::to_string(p.d) +
               ", a=" + std::to_string(p.a) + ", p=" + std::to_string(p.p) + ", nx=" + std::to_string(p.nx) + ")";
      });

  py::class_<HeterogeneityProfile>(m, "HeterogeneityProfile")
      .def_static("polynomial", &HeterogeneityProfile::polynomial, py::arg("p"), py::arg("a") = 1.0)
      .def_static("constant", &HeterogeneityProfile::constant, py::arg("c0"), py::arg("a") = 1.0)
      .def_property_readonly("amplitude", &HeterogeneityProfile::amplitude)
      .def("__call__", [](const HeterogeneityProfile& h, double x) { return c_profile(x, h); });

  py::class_<StationaryState>(m, "StationaryState")
      .def_readonly("x", &StationaryState::x)
      .def_readonly("u_bar", &StationaryState::u_bar)
      .def_readonly("v_bar", &StationaryState::v_bar)
      .def_readonly("fprime_bar", &StationaryState::fprime_bar);
  m.def("stationary_state", &stationary_state, py::arg("params"), py::arg("profile"));

  py::class_<EigenPair>(m, "EigenPair")
      .def_readonly("n", &EigenPair::n)
      .def_readonly("nu", &EigenPair::nu)
      .def_readonly("u", &EigenPair::u)
      .def_readonly("lambda_plus", &EigenPair::lambda_plus)
      .def_readonly("lambda_minus", &EigenPair::lambda_minus);

  m.def(
      "spectrum",
      [](const ModelParams& params, const HeterogeneityProfile& profile, int modes) {
        const auto st = stationary_state(params, profile);
        const SpectralProblem problem(st, params, profile);
        return spectrum(modes, problem, params.epsilon);
      },
      py::arg("params"), py::arg("profile"), py::arg("modes") = 5);
  m.def(
      "temporal_eigs",
      [](double nu, double epsilon) {
        const auto pair = temporal_eigs(nu, epsilon);
        return py::make_tuple(pair.plus, pair.minus);
      },
      py::arg("nu"), py::arg("epsilon"));

  py::class_<HopfPoint>(m, "HopfPoint")
      .def_readonly("p0", &HopfPoint::p0)
      .def_readonly("nu0", &HopfPoint::nu0)
      .def_readonly("lambda_", &HopfPoint::lambda)
      .def_readonly("bracket_lo", &HopfPoint::bracket_lo)
      .def_readonly("bracket_hi", &HopfPoint::bracket_hi)
      .def_readonly("sign_changes", &HopfPoint::sign_changes);
  m.def("ground_nu", py::overload_cast<const ModelParams&, double>(&ground_nu), py::arg("params"), py::arg("p"));
  m.def(
      "find_p0",
      [](const ModelParams& params, double p_lo, double p_hi, double p_ceiling) {
        HopfSearchOptions options;
        options.p_ceiling = p_ceiling;
        return find_p0(params, p_lo, p_hi, options);
      },
      py::arg("params"), py::arg("p_lo") = 0.5, py::arg("p_hi") = 4.0, py::arg("p_ceiling") = 64.0);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("p", &SweepRow::p)
      .def_readonly("nu0", &SweepRow::nu0)
      .def_readonly("re_lambda0", &SweepRow::re_lambda0)
      .def_readonly("im_lambda0", &SweepRow::im_lambda0)
      .def_property_readonly("classification", [](const SweepRow& r) { return to_string(r.classification); })
      .def_readonly("error", &SweepRow::error);
  m.def(
      "stability_sweep",
      [](const std::vector<double>& ps, const ModelParams& params, unsigned threads) {
        py::gil_scoped_release release;
        return stability_sweep(ps, params, threads);
      },
      py::arg("p_values"), py::arg("params"), py::arg("threads") = 1);

  py::class_<LyapunovReport>(m, "LyapunovReport")
      .def_readonly("nu0", &LyapunovReport::nu0)
      .def_readonly("lambda1", &LyapunovReport::lambda1)
      .def_readonly("C", &LyapunovReport::C)
      .def_readonly("omega0", &LyapunovReport::omega0)
      .def_readonly("g20", &LyapunovReport::g20)
      .def_readonly("g11", &LyapunovReport::g11)
      .def_readonly("g21", &LyapunovReport::g21)
      .def_readonly("x", &LyapunovReport::x)
      .def_readonly("w20", &LyapunovReport::w20_profile)
      .def_readonly("l1", &LyapunovReport::l1)
      .def_readonly("l1_alt", &LyapunovReport::l1_alt)
      .def_readonly("residual", &LyapunovReport::residual);
  m.def("lyapunov", &lyapunov_at, py::arg("params"), py::arg("profile"));

  py::class_<OscillationSummary>(m, "OscillationSummary")
      .def_property_readonly("regime", [](const OscillationSummary& s) { return to_string(s.regime); })
      .def_readonly("peak_to_peak", &OscillationSummary::peak_to_peak)
      .def_readonly("tail_mean", &OscillationSummary::tail_mean)
      .def_readonly("period", &OscillationSummary::period);

  py::class_<SimulationResult>(m, "SimulationResult")
      .def_property_readonly("t", [](const SimulationResult& r) { return r.probe.t; })
      .def_property_readonly("probe_x", [](const SimulationResult& r) { return r.probe.probe_x; })
      .def_property_readonly("probe_u", [](const SimulationResult& r) { return r.probe.u; })
      .def_property_readonly("u", [](const SimulationResult& r) { return r.final_state.u; })
      .def_property_readonly("v", [](const SimulationResult& r) { return r.final_state.v; })
      .def_readonly("summary", &SimulationResult::summary)
      .def_readonly("dt_exceeds_guard", &SimulationResult::dt_exceeds_guard);
  m.def(
      "simulate",
      [](const ModelParams& params, const HeterogeneityProfile& profile, double t_end, double dt, double sample_dt,
         double perturbation, std::vector<double> probe_x) {
        SimulationOptions options;
        options.t_end = t_end;
        options.dt = dt;
        options.sample_dt = sample_dt;
        options.perturbation = perturbation;
        options.probe_x = std::move(probe_x);
        py::gil_scoped_release release;
        return simulate(params, profile, options);
      },
      py::arg("params"), py::arg("profile"), py::arg("t_end") = 600.0, py::arg("dt") = 1e-4,
      py::arg("sample_dt") = 1e-2, py::arg("perturbation") = 1e-3, py::arg("probe_x") = std::vector<double>{});
}
