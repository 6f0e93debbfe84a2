#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "reglab/cli.hpp"
#include "reglab/constants.hpp"
#include "reglab/errors.hpp"
#include "reglab/io.hpp"
#include "reglab/pde_residual.hpp"
#include "reglab/rearrange.hpp"
#include "reglab/regularity.hpp"

namespace py = pybind11;
using namespace reglab;

namespace {

py::object to_python(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

std::vector<double> origin_if_empty(const FieldSpec& f, std::vector<double> c) {
  if (c.empty()) c.assign(f.n(), 0.0);
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Regularity laboratory for semilinear elliptic systems";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ConfigError>(m, "ConfigError", base);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<FamilyMismatch>(m, "FamilyMismatch", base);
  py::register_exception<IndexError>(m, "IndexError", base);
  py::register_exception<SupportError>(m, "SupportError", base);
  py::register_exception<UnsupportedDimension>(m, "UnsupportedDimension", base);

  py::class_<FieldSpec>(m, "Field")
      .def_property_readonly("n", &FieldSpec::n)
      .def_property_readonly("components", &FieldSpec::K)
      .def_property_readonly("family", [](const FieldSpec& f) { return to_string(f.family()); })
      .def("describe", [](const FieldSpec& f) { return to_python(to_json(f)); })
      .def("__repr__", [](const FieldSpec& f) {
        return "<Field " + to_string(f.family()) + " n=" + std::to_string(f.n()) + ">";
      });

  m.def("field", &field_from_spec, py::arg("spec"), py::arg("n"),
        "Field from a spec string such as 'sinlog2nd' or 'powerlaw:alpha=0.5'.");

  m.def(
      "pointwise_residual",
      [](const FieldSpec& f, std::vector<double> radii) {
        if (radii.empty()) radii = log_spaced(1e-6, kOmegaRadius, 100);
        return to_python(to_json(pointwise_residual(SystemSpec::for_family(f.family()), f, radii)));
      },
      py::arg("field"), py::arg("radii") = std::vector<double>{});

  m.def(
      "weak_residual",
      [](const FieldSpec& f, double radius, std::vector<double> center) {
        const SystemSpec system = SystemSpec::for_family(f.family());
        const Bump bump{std::move(center), radius};
        return py::make_tuple(to_python(to_json(weak_residual(f, bump, system.order))),
                              to_python(to_json(weak_system_residual(system, f, bump))));
      },
      py::arg("field"), py::arg("radius"), py::arg("center") = std::vector<double>{});

  m.def(
      "power_law_lorentz_norm",
      [](int n, double s, double p, double q, double radius, double c) {
        return to_python(to_json(power_law_lorentz_norm(n, s, p, q, radius, c)));
      },
      py::arg("n"), py::arg("s"), py::arg("p"), py::arg("q") = INFINITY,
      py::arg("radius") = 1.0, py::arg("coefficient") = 1.0);

  m.def(
      "sobolev_membership",
      [](const FieldSpec& f, int k, double p) {
        return to_python(to_json(sobolev_membership(f, k, p)));
      },
      py::arg("field"), py::arg("k"), py::arg("p"));

  m.def(
      "morrey_subnorm",
      [](const FieldSpec& f, double r, double p, std::vector<double> center) {
        const MorreyResult res = morrey_subnorm(f, origin_if_empty(f, std::move(center)), r, p);
        Json inc = Json::array();
        for (double d : res.decade_increments) inc.push_back(number(d));
        return to_python(Json{{"value", number(res.value)},
                              {"error", number(res.error)},
                              {"verdict", to_string(res.verdict)},
                              {"decade_increments", inc}});
      },
      py::arg("field"), py::arg("r"), py::arg("p"), py::arg("center") = std::vector<double>{});

  m.def(
      "oscillation_scan",
      [](const FieldSpec& f, const std::vector<double>& radii, std::vector<double> center) {
        return to_python(to_json(oscillation_scan(f, origin_if_empty(f, std::move(center)), radii)));
      },
      py::arg("field"), py::arg("radii"), py::arg("center") = std::vector<double>{});

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a command line; returns (exit_code, stdout, stderr).");
}
