#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ebound/bounds.hpp"
#include "ebound/certificate.hpp"
#include "ebound/codes.hpp"
#include "ebound/error.hpp"
#include "ebound/levenshtein.hpp"
#include "ebound/orthopoly.hpp"
#include "ebound/potentials.hpp"

namespace py = pybind11;
using namespace ebound;

namespace {

py::object to_python(const nlohmann::json& doc) { return py::module_::import("json").attr("loads")(doc.dump()); }

Potential resolve(const py::object& pot, int n) {
  if (py::isinstance<py::str>(pot)) return parse_potential(pot.cast<std::string>(), n);
  return pot.cast<Potential>();
}

SphericalCode as_code(const Eigen::MatrixXd& points, bool renormalize) { return SphericalCode(points, 1e-9, renormalize); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Universal upper and lower energy bounds for spherical codes";
  m.attr("__version__") = kToolVersion;

  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_ValueError);
  py::register_exception<CertificationError>(m, "CertificationError", PyExc_RuntimeError);

  py::class_<Potential>(m, "Potential")
      .def_static("newton", &Potential::newton, py::arg("n"))
      .def_static("riesz", &Potential::riesz, py::arg("alpha"))
      .def_static("gaussian", &Potential::gaussian, py::arg("alpha"))
      .def_static("logarithmic", &Potential::logarithmic)
      .def_static("parse", [](const std::string& spec, int n) { return parse_potential(spec, n); }, py::arg("spec"),
                  py::arg("n"))
      .def("__call__", &Potential::operator(), py::arg("t"))
      .def("derivative", py::overload_cast<double, int>(&Potential::derivative, py::const_), py::arg("t"),
           py::arg("order") = 1)
      .def_property_readonly("spec", &Potential::spec)
      .def("__repr__", [](const Potential& p) { return "Potential('" + p.spec() + "')"; });

  py::class_<IntervalIndex>(m, "IntervalIndex")
      .def_readonly("m", &IntervalIndex::m)
      .def_readonly("k", &IntervalIndex::k)
      .def_readonly("eps", &IntervalIndex::eps)
      .def_readonly("lo", &IntervalIndex::lo)
      .def_readonly("hi", &IntervalIndex::hi)
      .def_readonly("tie", &IntervalIndex::tie);

  py::class_<QuadratureRule>(m, "QuadratureRule")
      .def_readonly("interval", &QuadratureRule::interval)
      .def_readonly("s", &QuadratureRule::s)
      .def_readonly("L", &QuadratureRule::N)
      .def_readonly("nodes", &QuadratureRule::nodes)
      .def_readonly("weights", &QuadratureRule::weights)
      .def_readonly("max_residual", &QuadratureRule::max_residual)
      .def_property_readonly("m", &QuadratureRule::m);

  m.def("gegenbauer", &eval_gegenbauer, py::arg("n"), py::arg("i"), py::arg("t"));
  m.def("find_interval", [](int n, double s) { return find_interval(n, s); }, py::arg("n"), py::arg("s"));
  m.def("lev_value", [](int n, int mm, double s) { return lev_value(n, interval_bounds(n, mm), s); }, py::arg("n"),
        py::arg("m"), py::arg("s"));
  m.def("levenshtein_function", &levenshtein_function, py::arg("n"), py::arg("s"));
  m.def("quadrature", [](int n, double s) { return quadrature(n, s); }, py::arg("n"), py::arg("s"));

  m.def("uub", [](int n, double M, double s, const py::object& pot) { return uub(n, M, s, resolve(pot, n)).uub; },
        py::arg("n"), py::arg("M"), py::arg("s"), py::arg("potential") = "newton");
  m.def("ulb", [](int n, double M, const py::object& pot) { return ulb(n, M, resolve(pot, n)).value; }, py::arg("n"),
        py::arg("M"), py::arg("potential") = "newton");
  m.def(
      "strip",
      [](int n, double M, double s, const py::object& pot) {
        const auto st = strip(n, M, s, resolve(pot, n));
        return py::make_tuple(st.ulb, st.uub);
      },
      py::arg("n"), py::arg("M"), py::arg("s"), py::arg("potential") = "newton");
  m.def(
      "certificate",
      [](int n, double M, double s, const py::object& pot) { return to_python(strip_to_json(strip(n, M, s, resolve(pot, n)))); },
      py::arg("n"), py::arg("M"), py::arg("s"), py::arg("potential") = "newton",
      "Energy strip with the full upper-bound certificate, as a dict.");
  m.def(
      "test_functions",
      [](int n, double s, int j_max) {
        const auto rep = test_functions(n, s, j_max);
        py::dict out;
        out["values"] = rep.values;
        out["first_checked"] = rep.first_checked;
        out["optimal_in_class"] = rep.optimal_in_class;
        return out;
      },
      py::arg("n"), py::arg("s"), py::arg("j_max"));

  m.def("ez_separation", &ez_separation, py::arg("n"));
  m.def("generate", [](const std::string& spec) { return generate(spec).points(); }, py::arg("spec"));
  m.def(
      "code_energy",
      [](const Eigen::MatrixXd& pts, const py::object& pot, bool renormalize) {
        const auto code = as_code(pts, renormalize);
        return energy(code, resolve(pot, code.dim()));
      },
      py::arg("points"), py::arg("potential") = "newton", py::arg("renormalize") = false);
  m.def(
      "code_separation", [](const Eigen::MatrixXd& pts, bool renormalize) { return separation(as_code(pts, renormalize)); },
      py::arg("points"), py::arg("renormalize") = false);
  m.def(
      "verify",
      [](const Eigen::MatrixXd& pts, const py::object& pot, bool renormalize) {
        const auto code = as_code(pts, renormalize);
        const auto v = verify_strip(code, resolve(pot, code.dim()));
        py::dict out;
        out["separation"] = v.s;
        out["energy"] = v.energy;
        out["ulb"] = v.strip.ulb;
        out["uub"] = v.strip.uub;
        out["position"] = v.position;
        out["inside"] = v.inside;
        out["attains_uub"] = v.attains_uub;
        out["attains_ulb"] = v.attains_ulb;
        return out;
      },
      py::arg("points"), py::arg("potential") = "newton", py::arg("renormalize") = false);
}
