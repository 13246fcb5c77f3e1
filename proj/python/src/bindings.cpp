#include "eavesim/attack_model.hpp"
#include "eavesim/closed_form.hpp"
#include "eavesim/config.hpp"
#include "eavesim/information_analysis.hpp"
#include "eavesim/runner.hpp"
#include "eavesim/verification.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace eavesim;

namespace {

RunConfig config_from_text(const std::string& text, Mode mode) {
  std::istringstream in(text);
  return parse_config(in, mode, "<string>");
}

closed_form::SymmetricDisturbances disturbances(std::vector<double> d) {
  return closed_form::SymmetricDisturbances(std::move(d));
}

}  // namespace

PYBIND11_MODULE(_eavesim, m) {
  m.attr("__version__") = kVersion;

  py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::enum_<Basis>(m, "Basis").value("xy", Basis::xy).value("uv", Basis::uv);
  py::enum_<CircuitFault>(m, "CircuitFault")
      .value("none", CircuitFault::none)
      .value("swapped_signal_cnot", CircuitFault::swapped_signal_cnot);

  m.def("delta_from_d", &delta_from_d, py::arg("d"));
  m.def("d_from_delta", &d_from_delta, py::arg("delta"));

  py::class_<EveParams>(m, "EveParams")
      .def(py::init([](double delta_uv, double d_xy) { return EveParams{delta_uv, d_xy}; }),
           py::arg("delta_uv"), py::arg("d_xy"))
      .def_static("from_disturbance", &EveParams::from_disturbance, py::arg("d"))
      .def_readwrite("delta_uv", &EveParams::delta_uv)
      .def_readwrite("d_xy", &EveParams::d_xy)
      .def_property_readonly("d_uv", &EveParams::d_uv)
      .def("symmetric", &EveParams::symmetric, py::arg("tolerance") = kExactTolerance)
      .def("__repr__", [](const EveParams& e) {
        return "EveParams(delta_uv=" + format_number(e.delta_uv) + ", d_xy=" + format_number(e.d_xy) + ")";
      });

  py::class_<AttackScenario>(m, "AttackScenario")
      .def(py::init([](std::vector<EveParams> eves, Basis basis, CircuitFault fault, int max_qubits) {
             AttackScenario s;
             s.eves = std::move(eves);
             s.signal_basis = basis;
             s.fault = fault;
             s.max_qubits = max_qubits;
             return s;
           }),
           py::arg("eves"), py::arg("basis") = Basis::xy, py::arg("fault") = CircuitFault::none,
           py::arg("max_qubits") = kDefaultMaxQubits)
      .def_readwrite("eves", &AttackScenario::eves)
      .def_readwrite("basis", &AttackScenario::signal_basis)
      .def_readwrite("fault", &AttackScenario::fault)
      .def_readwrite("max_qubits", &AttackScenario::max_qubits)
      .def_property_readonly("num_qubits", &AttackScenario::num_qubits);

  m.def(
      "symmetric_scenario",
      [](std::vector<double> d, Basis basis) { return symmetric_scenario(d, basis); },
      py::arg("d"), py::arg("basis") = Basis::xy);

  py::class_<EveReport>(m, "EveReport")
      .def_readonly("index", &EveReport::index)
      .def_readonly("params", &EveReport::params)
      .def_readonly("gain", &EveReport::gain)
      .def_readonly("gain_spread", &EveReport::gain_spread)
      .def_readonly("mutual_information", &EveReport::mutual_information)
      .def_readonly("povm_degenerate", &EveReport::povm_degenerate)
      .def_property_readonly("q", [](const EveReport& r) { return r.table.q; })
      .def_property_readonly("outcome_gains", [](const EveReport& r) { return r.table.gain; });

  py::class_<AnalysisReport>(m, "AnalysisReport")
      .def_readonly("eves", &AnalysisReport::eves)
      .def_readonly("d_b", &AnalysisReport::d_b)
      .def_readonly("d_b_xy", &AnalysisReport::d_b_xy)
      .def_readonly("d_b_uv", &AnalysisReport::d_b_uv)
      .def_readonly("i_ab", &AnalysisReport::i_ab)
      .def_readonly("i_opt", &AnalysisReport::i_opt)
      .def_readonly("symmetric", &AnalysisReport::symmetric);

  m.def("analyze", &analyze, py::arg("scenario"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "analysis_json",
      [](const std::string& config_text) {
        const RunConfig config = config_from_text(config_text, Mode::analyze);
        return analysis_json(config, analyze(config.scenario));
      },
      py::arg("config_text"));

  py::class_<DiagramRow>(m, "DiagramRow")
      .def_readonly("d_var", &DiagramRow::d_var)
      .def_readonly("d_b", &DiagramRow::d_b)
      .def_readonly("i_ae", &DiagramRow::i_ae)
      .def_readonly("i_ab", &DiagramRow::i_ab)
      .def_readonly("i_opt", &DiagramRow::i_opt);

  m.def(
      "diagram_rows",
      [](const std::string& config_text) {
        const RunConfig config = config_from_text(config_text, Mode::diagram);
        py::gil_scoped_release release;
        return diagram_rows(config);
      },
      py::arg("config_text"));

  py::class_<FamilyResult>(m, "FamilyResult")
      .def_readonly("name", &FamilyResult::name)
      .def_readonly("passed", &FamilyResult::passed)
      .def_readonly("max_deviation", &FamilyResult::max_deviation)
      .def_readonly("tolerance", &FamilyResult::tolerance)
      .def_readonly("checks", &FamilyResult::checks)
      .def_readonly("worst_point", &FamilyResult::worst_point);

  py::class_<VerificationSummary>(m, "VerificationSummary")
      .def_readonly("families", &VerificationSummary::families)
      .def_property_readonly("passed", &VerificationSummary::passed)
      .def("find", &VerificationSummary::find, py::return_value_policy::reference_internal);

  m.def(
      "run_verification",
      [](int samples, int max_eves, int brute_force_max_eves, int brute_force_draws, CircuitFault fault,
         std::uint64_t seed) {
        VerifyOptions o;
        o.samples = samples;
        o.max_eves = max_eves;
        o.brute_force_max_eves = brute_force_max_eves;
        o.brute_force_draws = brute_force_draws;
        o.fault = fault;
        py::gil_scoped_release release;
        return run_verification(o, seed);
      },
      py::arg("samples") = 10000, py::arg("max_eves") = 8, py::arg("brute_force_max_eves") = 5,
      py::arg("brute_force_draws") = 40, py::arg("fault") = CircuitFault::none, py::arg("seed") = 1);

  auto cf = m.def_submodule("closed_form");
  cf.def("phi", &closed_form::phi, py::arg("z"));
  cf.def("optimal_information", &closed_form::optimal_information, py::arg("d_b"));
  cf.def("receiver_information", &closed_form::receiver_information, py::arg("d_b"));
  cf.def("crossover_disturbance", &closed_form::crossover_disturbance);
  cf.def("gains", [](std::vector<double> d) { return closed_form::gains(disturbances(std::move(d))); }, py::arg("d"));
  cf.def(
      "mutual_informations",
      [](std::vector<double> d) { return closed_form::mutual_informations(disturbances(std::move(d))); },
      py::arg("d"));
  cf.def(
      "bob_error_recursive",
      [](std::vector<double> d) { return closed_form::bob_error_recursive(disturbances(std::move(d))); },
      py::arg("d"));
  cf.def(
      "bob_error_product",
      [](std::vector<double> d) { return closed_form::bob_error_product(disturbances(std::move(d))); },
      py::arg("d"));
}
