#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include "gacalc/analytic.hpp"
#include "gacalc/apps.hpp"
#include "gacalc/expr.hpp"

namespace py = pybind11;
using namespace gacalc;

namespace {

Signature to_signature(const std::tuple<int, int, int>& t) {
  return {std::get<0>(t), std::get<1>(t), std::get<2>(t)};
}

Session make_session(const std::tuple<int, int, int>& sig, int cga, const std::string& scalars) {
  const auto kind = scalar_kind_from_name(scalars);
  if (!kind) throw ParseError("scalars must be float, rational or ratfun", 0);
  return cga > 0 ? Session::conformal(cga, *kind) : Session::plain(to_signature(sig), *kind);
}

}  // namespace

PYBIND11_MODULE(gacalc, m) {
  m.doc() = "Geometric algebra calculator: multivectors, conformal and projective models, and the worked examples.";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<MathError>(m, "MathError", PyExc_ArithmeticError);

  py::class_<MultivectorF>(m, "Multivector")
      .def(py::init([](const std::tuple<int, int, int>& sig, std::vector<double> coeffs) {
             return MultivectorF(Algebra::create(to_signature(sig)), std::move(coeffs));
           }),
           py::arg("signature"), py::arg("coeffs"))
      .def_property_readonly("coeffs", &MultivectorF::coeffs)
      .def_property_readonly("signature",
                             [](const MultivectorF& a) {
                               const auto& s = a.signature();
                               return std::make_tuple(s.p, s.q, s.r);
                             })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self * double())
      .def(double() * py::self)
      .def(-py::self)
      .def("__xor__", [](const MultivectorF& a, const MultivectorF& b) { return a ^ b; })
      .def("__or__", [](const MultivectorF& a, const MultivectorF& b) { return a | b; })
      .def("__eq__", [](const MultivectorF& a, const MultivectorF& b) { return a == b; })
      .def("grade", [](const MultivectorF& a, int k) { return grade(a, k); })
      .def("reverse", [](const MultivectorF& a) { return reverse(a); })
      .def("inverse", [](const MultivectorF& a) { return inverse(a); })
      .def("exp", [](const MultivectorF& a) { return exp(a); })
      .def("log", [](const MultivectorF& a) { return log(a); })
      .def("__str__", [](const MultivectorF& a) { return to_text(a); })
      .def("__repr__", [](const MultivectorF& a) { return "Multivector(" + to_text(a) + ")"; });

  m.def(
      "evaluate",
      [](const std::string& expr, const std::tuple<int, int, int>& sig, int cga, const std::string& scalars) {
        return evaluate_source(make_session(sig, cga, scalars), expr).text;
      },
      py::arg("expr"), py::arg("sig") = std::make_tuple(3, 0, 0), py::arg("cga") = 0, py::arg("scalars") = "float",
      "Evaluates an expression and returns its text rendering.");

  m.def(
      "fk3r",
      [](const std::array<double, 3>& lengths, const std::array<double, 3>& angles) {
        const auto p = fk3r(lengths, angles);
        return std::make_tuple(p.x, p.y, p.phi);
      },
      py::arg("lengths"), py::arg("angles"), "End-effector (x, y, phi) of the 3R planar arm.");

  m.def(
      "ik6r",
      [](double d1, double a3, double d4, const std::array<double, 3>& target) {
        return ik6r({d1, a3, d4, target}).solutions;
      },
      py::arg("d1"), py::arg("a3"), py::arg("d4"), py::arg("target"), "Both elbow solutions (theta1, theta2, theta3).");

  m.def(
      "power_report",
      [](const std::string& config_json) {
        return power_report(solve_power_network(power_network_from_json(nlohmann::json::parse(config_json))));
      },
      py::arg("config_json"), "Transfer-function report for a network given as JSON text.");

  m.def(
      "bench",
      [](const std::tuple<int, int, int>& sig) {
        const auto row = bench_signature(to_signature(sig));
        py::dict out;
        out["construct_ms"] = row.construct_ms;
        out["inverse_ms"] = row.inverse_ms;
        out["residual"] = row.residual;
        out["correct"] = row.correct;
        return out;
      },
      py::arg("sig"));
}
