#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "atorus/algebra.hpp"
#include "atorus/cli.hpp"
#include "atorus/expr.hpp"
#include "atorus/forms.hpp"
#include "atorus/prolong.hpp"
#include "atorus/spectral.hpp"

namespace py = pybind11;
using namespace atorus;

namespace {

APoint to_point(const std::vector<Eigen::VectorXd>& xs, const LocalAlgebra& a) {
  APoint p;
  for (const auto& x : xs) {
    if (x.size() != a.dim()) throw DimensionMismatch("point component has wrong length");
    p.components.emplace_back(x);
  }
  return p;
}

py::dict report_dict(const Report& r) {
  py::list checks;
  for (const auto& c : r.checks) {
    checks.append(py::make_tuple(c.name, c.pass, c.detail));
  }
  py::dict summary;
  for (const auto& [k, v] : r.summary) summary[py::str(k)] = v;
  py::dict out;
  out["passed"] = r.all_pass();
  out["checks"] = checks;
  out["notes"] = r.notes;
  out["summary"] = summary;
  out["text"] = r.render();
  return out;
}

Eigen::MatrixXd tensor_slices(const StructureConstants& c) {
  const int n = c.dim();
  Eigen::MatrixXd out(n * n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out(i * n + j, k) = c(i, j, k);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "atorus core bindings";

  auto base = py::register_exception<Error>(m, "AtorusError", PyExc_RuntimeError);
  py::register_exception<SizeCapExceeded>(m, "SizeCapExceeded", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<NonUnit>(m, "NonUnit", base.ptr());
  py::register_exception<SyntaxError>(m, "SyntaxError", base.ptr());
  py::register_exception<UnknownVariable>(m, "UnknownVariable", base.ptr());
  py::register_exception<SpecParseError>(m, "SpecParseError", base.ptr());
  py::register_exception<IndexNotBreve>(m, "IndexNotBreve", base.ptr());

  py::class_<LocalAlgebra>(m, "Algebra")
      .def_static("preset", [](const std::string& name) { return make_local_algebra(preset(name)); },
                  py::arg("name"))
      .def_static("from_spec",
                  [](const std::string& text) { return make_local_algebra(parse_algebra_spec(text)); },
                  py::arg("text"))
      .def_static("load",
                  [](const std::string& path) { return make_local_algebra(load_algebra_spec(path)); },
                  py::arg("path"))
      .def_property_readonly("dim", &LocalAlgebra::dim)
      .def_property_readonly("nu", &LocalAlgebra::nu)
      .def_property_readonly("labels", [](const LocalAlgebra& a) { return a.alg.labels(); })
      .def_property_readonly("pseudobasis", [](const LocalAlgebra& a) { return a.info.pseudobasis; })
      .def_property_readonly("socle_indices", [](const LocalAlgebra& a) { return a.info.socle; })
      .def_property_readonly("breve_indices", [](const LocalAlgebra& a) { return a.info.breve; })
      .def_property_readonly("socle", [](const LocalAlgebra& a) { return a.socle; })
      .def_property_readonly("filtration_dims",
                             [](const LocalAlgebra& a) { return radical_filtration(a.alg).dims(); })
      .def_property_readonly("monomials", [](const LocalAlgebra& a) { return a.info.monomial; })
      .def_property_readonly("standard_basis", [](const LocalAlgebra& a) { return a.input_info.basis; },
                             "Standard basis vectors (columns) in input coordinates.")
      .def_property_readonly("structure_constants",
                             [](const LocalAlgebra& a) { return tensor_slices(a.alg); },
                             "Row i*n + j holds the coefficients of e_i e_j.")
      .def("mul",
           [](const LocalAlgebra& a, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
             return mul(Element(x), Element(y), a.alg).coeffs;
           })
      .def("invert",
           [](const LocalAlgebra& a, const Eigen::VectorXd& x) { return invert(Element(x), a.alg).coeffs; })
      .def("regular", [](const LocalAlgebra& a, const Eigen::VectorXd& x) { return a.alg.regular(Element(x)); })
      .def("format", [](const LocalAlgebra& a, const Eigen::VectorXd& x) {
        return format_element(Element(x), a.alg);
      })
      .def("parse_element", [](const LocalAlgebra& a, const std::string& text) {
        return parse_element(text, a.alg).coeffs;
      })
      .def("__repr__", [](const LocalAlgebra& a) {
        return "<Algebra n=" + std::to_string(a.dim()) + " nu=" + std::to_string(a.nu()) + ">";
      });

  m.def(
      "validate",
      [](const std::string& spec_text) {
        std::vector<std::string> out;
        for (const auto& v : validate_algebra(parse_algebra_spec(spec_text))) {
          out.push_back(to_string(v.kind) + ": " + v.message);
        }
        return out;
      },
      py::arg("spec_text"), "Violated axioms of an algebra spec; empty when it is a local algebra.");

  m.def(
      "eval_real",
      [](const std::string& text, const std::vector<double>& x) {
        return eval_real(parse(text, static_cast<int>(x.size())), x);
      },
      py::arg("expr"), py::arg("x"));
  m.def(
      "diff", [](const std::string& text, int j, int nvars) { return print(diff(parse(text, nvars), j)); },
      py::arg("expr"), py::arg("j"), py::arg("m"));

  m.def(
      "taylor_lift",
      [](const std::string& text, const std::vector<Eigen::VectorXd>& x, const LocalAlgebra& a) {
        const APoint p = to_point(x, a);
        return taylor_lift(parse(text, p.m()), p, a).coeffs;
      },
      py::arg("expr"), py::arg("point"), py::arg("algebra"));
  m.def(
      "lift_eval",
      [](const std::string& text, const std::vector<Eigen::VectorXd>& x, const LocalAlgebra& a) {
        const APoint p = to_point(x, a);
        return lift_eval(parse(text, p.m()), p, a).coeffs;
      },
      py::arg("expr"), py::arg("point"), py::arg("algebra"));
  m.def(
      "adiff_defect",
      [](const std::string& text, const std::vector<Eigen::VectorXd>& x, const LocalAlgebra& a,
         double h) {
        const APoint p = to_point(x, a);
        return adiff_defect(lifted_map(parse(text, p.m()), a, p.m()), p, a.alg, h);
      },
      py::arg("expr"), py::arg("point"), py::arg("algebra"), py::arg("h") = 1e-5,
      "Commutator defect of the numerical Jacobian of the lift of expr.");

  m.def(
      "function_nullspace",
      [](const LocalAlgebra& a, int mdim, int degree, double tol, std::int64_t cap) {
        const TorusConfig cfg{a, mdim};
        return solve_nullspace(assemble_function_constraints(cfg, degree, cap), tol).basis;
      },
      py::arg("algebra"), py::arg("m") = 1, py::arg("degree") = 1, py::arg("tol") = 1e-8,
      py::arg("cap") = kDefaultSizeCap,
      "Orthonormal basis of A-differentiable trig polynomials; column index i*B + t.");
  m.def(
      "verify",
      [](const LocalAlgebra& a, int mdim, int degree, double tol, int grid, std::int64_t cap) {
        return report_dict(run_verify({a, mdim}, degree, {tol, grid, cap}));
      },
      py::arg("algebra"), py::arg("m") = 1, py::arg("degree") = 1, py::arg("tol") = 1e-8,
      py::arg("grid") = 32, py::arg("cap") = kDefaultSizeCap);
  m.def(
      "forms",
      [](const LocalAlgebra& a, int mdim, int degree, double tol, std::int64_t cap) {
        return report_dict(run_forms({a, mdim}, degree, {tol, cap}));
      },
      py::arg("algebra"), py::arg("m") = 1, py::arg("degree") = 1, py::arg("tol") = 1e-8,
      py::arg("cap") = kDefaultSizeCap);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end in-process: (exit code, stdout, stderr).");
}
