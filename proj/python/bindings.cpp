#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "casimir/cli.hpp"
#include "casimir/dielectric.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/oracle.hpp"
#include "casimir/reflection.hpp"

namespace py = pybind11;
using namespace casimir;

namespace {

struct PyModel {
  MaterialModel model;
};

PyModel make_py_model(const std::string& name, const MaterialParameters& params) {
  return {make_model(parse_model(name), params)};
}

py::tuple pair(const ReflectionPair& r) { return py::make_tuple(r.r_tm, r.r_te); }

}  // namespace

PYBIND11_MODULE(_casimir, m) {
  m.doc() = "Thermal Casimir force between a Ge lens and plate";

  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  py::class_<Geometry>(m, "Geometry")
      .def(py::init([](double a, double R, double T) {
             Geometry g{a, R, T};
             g.validate();
             return g;
           }),
           py::arg("a"), py::arg("R") = 0.151, py::arg("T") = 300.0)
      .def_readonly("a", &Geometry::a)
      .def_readonly("R", &Geometry::R)
      .def_readonly("T", &Geometry::T)
      .def("pfa_valid", &Geometry::pfa_valid);

  py::class_<OscillatorModel>(m, "OscillatorModel")
      .def(py::init<double, double, double>(), py::arg("eps_inf") = 1.1, py::arg("eps_0") = 16.2,
           py::arg("omega_0") = 5.0e15)
      .def_readwrite("eps_inf", &OscillatorModel::eps_inf)
      .def_readwrite("eps_0", &OscillatorModel::eps_0)
      .def_readwrite("omega_0", &OscillatorModel::omega_0);

  py::class_<CarrierSpecies>(m, "CarrierSpecies")
      .def(py::init<double, double, double>(), py::arg("density"), py::arg("mass_ratio"), py::arg("gamma") = 0.0)
      .def_readwrite("density", &CarrierSpecies::density)
      .def_readwrite("mass_ratio", &CarrierSpecies::mass_ratio)
      .def_readwrite("gamma", &CarrierSpecies::gamma);

  py::class_<MaterialParameters>(m, "MaterialParameters")
      .def(py::init<>())
      .def_static("germanium", &MaterialParameters::germanium)
      .def_readwrite("osc", &MaterialParameters::osc)
      .def_readwrite("electrons", &MaterialParameters::electrons)
      .def_readwrite("holes", &MaterialParameters::holes);

  py::class_<PyModel>(m, "MaterialModel")
      .def(py::init(&make_py_model), py::arg("name"), py::arg("params") = MaterialParameters::germanium())
      .def_property_readonly("name", [](const PyModel& p) { return std::string(model_name(kind_of(p.model))); })
      .def("__repr__", [](const PyModel& p) { return "MaterialModel('" + std::string(model_name(kind_of(p.model))) + "')"; });

  py::class_<EngineConfig>(m, "EngineConfig")
      .def(py::init<>())
      .def_readwrite("rel_tol", &EngineConfig::rel_tol)
      .def_readwrite("y_tail_cut", &EngineConfig::y_tail_cut)
      .def_readwrite("l_max_hard", &EngineConfig::l_max_hard)
      .def_readwrite("max_intervals", &EngineConfig::max_intervals)
      .def_readwrite("threads", &EngineConfig::threads)
      .def_property(
          "quadrature_rule", [](const EngineConfig& c) { return std::string(rule_name(c.quadrature_rule)); },
          [](EngineConfig& c, const std::string& s) { c.quadrature_rule = parse_rule(s); });

  py::class_<TermBreakdown>(m, "TermBreakdown")
      .def_readonly("l", &TermBreakdown::l)
      .def_readonly("zeta", &TermBreakdown::zeta)
      .def_readonly("weight", &TermBreakdown::weight)
      .def_readonly("tm_contribution", &TermBreakdown::tm_contribution)
      .def_readonly("te_contribution", &TermBreakdown::te_contribution)
      .def_readonly("quadrature_error_estimate", &TermBreakdown::quadrature_error_estimate);

  py::class_<ForceResult>(m, "ForceResult")
      .def_readonly("force", &ForceResult::force)
      .def_readonly("magnitude", &ForceResult::magnitude)
      .def_readonly("terms", &ForceResult::terms)
      .def_readonly("l_used", &ForceResult::l_used)
      .def_readonly("truncation_bound", &ForceResult::truncation_bound)
      .def_readonly("converged", &ForceResult::converged)
      .def("rel_err_est", &ForceResult::rel_err_est);

  m.def("matsubara_zeta", &matsubara_zeta, py::arg("l"), py::arg("geom"));
  m.def("characteristic_frequency", &characteristic_frequency, py::arg("geom"));
  m.def("reduce_frequency", &reduce_frequency, py::arg("omega"), py::arg("geom"));

  m.def("plasma_frequency", &plasma_frequency, py::arg("species"));
  m.def("eps_oscillator", &eps_oscillator, py::arg("zeta"), py::arg("omega_c"), py::arg("osc") = OscillatorModel{});
  m.def(
      "eps_model", [](std::size_t l, double zeta, double omega_c, const PyModel& p) {
        return eps_model(l, zeta, omega_c, p.model);
      },
      py::arg("l"), py::arg("zeta"), py::arg("omega_c"), py::arg("model"));
  m.def("debye_kappa", &debye_kappa, py::arg("electrons"), py::arg("holes"), py::arg("eps_0_static"), py::arg("T"));

  m.def(
      "fresnel", [](double zeta, double y, double eps) { return pair(fresnel(zeta, y, eps)); }, py::arg("zeta"),
      py::arg("y"), py::arg("eps"));
  m.def(
      "zero_frequency", [](double y, const PyModel& p, const Geometry& g) { return pair(zero_frequency(y, p.model, g)); },
      py::arg("y"), py::arg("model"), py::arg("geom"));

  m.def(
      "casimir_force",
      [](const PyModel& p, const Geometry& g, const EngineConfig& cfg) {
        py::gil_scoped_release release;
        return casimir_force(p.model, g, cfg);
      },
      py::arg("model"), py::arg("geom"), py::arg("cfg") = EngineConfig{});
  m.def(
      "model_difference",
      [](const PyModel& a, const PyModel& b, const Geometry& g, const EngineConfig& cfg) {
        py::gil_scoped_release release;
        return model_difference(a.model, b.model, g, cfg);
      },
      py::arg("model_a"), py::arg("model_b"), py::arg("geom"), py::arg("cfg") = EngineConfig{});

  m.def(
      "trilog",
      [](double x) {
        const auto v = oracle::trilog(x);
        return py::make_tuple(v.value, v.series_terms_used, v.bound_on_remainder);
      },
      py::arg("x"));
  m.def("classical_ideal_term", &oracle::classical_ideal_term, py::arg("geom"));
  m.def("drude_minus_neglected", &oracle::drude_minus_neglected, py::arg("geom"), py::arg("eps_0_static") = 16.2);

  m.def("golden_table", [] {
    std::vector<std::pair<double, std::vector<double>>> out;
    for (const auto& g : cli::golden_table())
      out.push_back({g.a_um, std::vector<double>(std::begin(g.force_pN), std::end(g.force_pN))});
    return out;
  });

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"casimir"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
