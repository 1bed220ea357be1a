#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "angularft/cli.hpp"
#include "angularft/exact.hpp"
#include "angularft/radial.hpp"
#include "angularft/verify.hpp"

namespace py = pybind11;
using namespace angularft;

namespace {

std::string singularity_name(Singularity s) {
  switch (s) {
    case Singularity::none: return "none";
    case Singularity::delta3: return "delta3";
    case Singularity::delta_r: return "delta_r";
  }
  return "none";
}

SpaceExpr transform_text(const std::string& expr) {
  const auto ast = cli::parse_expr(expr);
  if (ast.side != Side::momentum) throw cli::SemanticError("transform expects a momentum expression (p^n ...)", 0);
  return forward(cli::to_momentum(ast));
}

SpaceExpr inverse_text(const std::string& expr) {
  const auto ast = cli::parse_expr(expr);
  if (ast.side != Side::position) throw cli::SemanticError("inverse expects a position expression (r^k ...)", 0);
  return inverse(cli::to_position(ast));
}

}  // namespace

PYBIND11_MODULE(_angularft, m) {
  m.doc() = "Exact Fourier transforms of p^n times angular monomials";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<cli::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_ArithmeticError);

  py::class_<ExactScalar>(m, "ExactScalar")
      .def_property_readonly("rational", [](const ExactScalar& c) { return to_string(c.rational()); })
      .def_property_readonly("i_pow", &ExactScalar::i_pow)
      .def_property_readonly("pi_pow", &ExactScalar::pi_pow)
      .def("is_zero", &ExactScalar::is_zero)
      .def("__float__", &ExactScalar::to_double)
      .def("__str__", &ExactScalar::str)
      .def("__repr__", [](const ExactScalar& c) { return "ExactScalar(" + c.str() + ")"; })
      .def("__mul__", [](const ExactScalar& a, const ExactScalar& b) { return a * b; })
      .def(py::self == py::self);

  py::class_<SpaceTerm>(m, "SpaceTerm")
      .def_readonly("coeff", &SpaceTerm::coeff)
      .def_readonly("power", &SpaceTerm::power)
      .def_property_readonly("singularity", [](const SpaceTerm& t) { return singularity_name(t.singularity); })
      .def_property_readonly("angular", [](const SpaceTerm& t) { return t.angular.str(); })
      .def("__str__", &SpaceTerm::str);

  py::class_<SpaceExpr>(m, "SpaceExpr")
      .def_property_readonly("side",
                             [](const SpaceExpr& e) { return e.side() == Side::momentum ? "momentum" : "position"; })
      .def_property_readonly("terms", &SpaceExpr::terms)
      .def("__str__", &SpaceExpr::str)
      .def("__repr__", [](const SpaceExpr& e) { return "SpaceExpr(" + e.str() + ")"; })
      .def(py::self == py::self);

  m.def("chi", &chi, py::arg("n"), py::arg("l"), "Exact chi_{n l}.");
  m.def("transform", &transform_text, py::arg("expr"), "Fourier transform of a momentum expression string.");
  m.def("inverse", &inverse_text, py::arg("expr"), "Inverse transform of a position expression string.");
  m.def("render", [](const std::string& expr) { return cli::render(cli::parse_expr(expr)); }, py::arg("expr"),
        "Canonical rendering of an expression string.");
  m.def(
      "decompose",
      [](int L) {
        std::map<int, std::string> out;
        for (const auto& [l, t] : decompose(L)) out[l] = t.str();
        return out;
      },
      py::arg("L"), "Angular momentum components of phat_i1 ... phat_iL, rendered.");

  m.def("sph_bessel", &sph_bessel, py::arg("l"), py::arg("x"));
  m.def(
      "regulated_radial",
      [](int n, int l, double r, double lam) { return regulated_radial({n, l, r, lam}); }, py::arg("n"), py::arg("l"),
      py::arg("r"), py::arg("lam"));
  m.def("delta_rep", &delta_rep, py::arg("l"), py::arg("lam"), py::arg("r"));
  m.def("delta_rep_peak", &delta_rep_peak, py::arg("l"), py::arg("lam"));
  m.def("sift", &sift, py::arg("l"), py::arg("lam"), py::arg("f"));
  m.def(
      "yukawa_check", [](double p, double lam) { return yukawa_check(p, lam); }, py::arg("p"), py::arg("lam"));

  m.def("identity_kinds", &cli::identity_kind_names);
  m.def(
      "identity",
      [](const std::string& kind, std::optional<int> k) { return cli::identity_by_name(kind, k).str(); },
      py::arg("kind"), py::arg("k") = py::none(), "Rendered derivative identity.");
  m.def(
      "verify",
      [](const std::string& kind, std::optional<int> k, double tol) {
        const auto report = verify_identity(cli::identity_by_name(kind, k), standard_family(), tol);
        py::dict out;
        out["identity"] = report.identity;
        out["pass"] = report.pass;
        out["rows"] = report.rows.size();
        out["max_rel_diff"] = report.max_rel_diff();
        out["diagnostics"] = report.diagnostics;
        return out;
      },
      py::arg("kind"), py::arg("k") = py::none(), py::arg("tol") = 1e-6,
      "Verify an identity over the standard Gaussian test family.");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line front end in process; returns (exit_code, stdout, stderr).");
}
