#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "splc/coarsen.hpp"
#include "splc/galerkin.hpp"
#include "splc/io.hpp"
#include "splc/removal.hpp"

namespace py = pybind11;
using namespace splc;

PYBIND11_MODULE(_splc, m) {
  m.doc() = "Univariate B-spline knot removal and adaptive coarsening";

  py::register_exception<error>(m, "SplineError");

  py::enum_<Side>(m, "Side")
      .value("left", Side::left)
      .value("right", Side::right);

  py::enum_<IndicatorKind>(m, "IndicatorKind")
      .value("xi", IndicatorKind::xi)
      .value("cp", IndicatorKind::cp)
      .value("d", IndicatorKind::d)
      .value("jump", IndicatorKind::jump)
      .value("linf", IndicatorKind::linf);

  py::enum_<RemovalNorm>(m, "RemovalNorm")
      .value("xi", RemovalNorm::xi)
      .value("cp", RemovalNorm::cp)
      .value("linf", RemovalNorm::linf);

  py::enum_<Refit>(m, "Refit")
      .value("local", Refit::local)
      .value("global_l2", Refit::global_l2);

  py::class_<KnotVector>(m, "KnotVector")
      .def(py::init<std::vector<double>, int>(), py::arg("knots"), py::arg("degree"))
      .def_property_readonly("degree", &KnotVector::degree)
      .def_property_readonly("dim", &KnotVector::dim)
      .def_property_readonly("knots", &KnotVector::knots)
      .def_property_readonly("a", &KnotVector::a)
      .def_property_readonly("b", &KnotVector::b)
      .def_property_readonly("open", &KnotVector::open)
      .def_property_readonly("num_breakpoints", &KnotVector::num_breakpoints)
      .def_property_readonly("num_interior_knots", &KnotVector::num_interior_knots)
      .def("breakpoint", &KnotVector::breakpoint, py::arg("j"))
      .def("multiplicity", &KnotVector::multiplicity, py::arg("j"))
      .def("greville", &KnotVector::greville)
      .def("xi_weights", &KnotVector::xi_weights)
      .def("__eq__", [](const KnotVector& a, const KnotVector& b) { return a == b; })
      .def("__repr__", [](const KnotVector& kv) {
        return "KnotVector(degree=" + std::to_string(kv.degree()) +
               ", dim=" + std::to_string(kv.dim()) + ")";
      });

  py::class_<Spline>(m, "Spline")
      .def(py::init<KnotVector, std::vector<double>>(), py::arg("space"),
           py::arg("control_points"))
      .def_property_readonly("space", &Spline::space)
      .def_property_readonly("control_points", &Spline::control_points)
      .def_property_readonly("degree", &Spline::degree)
      .def_property_readonly("dim", &Spline::dim)
      .def("__call__", &Spline::eval, py::arg("x"))
      .def("__call__",
           [](const Spline& s, const std::vector<double>& xs) {
             std::vector<double> out(xs.size());
             for (std::size_t i = 0; i < xs.size(); ++i) out[i] = s.eval(xs[i]);
             return out;
           })
      .def("derivative", &derivative_spline)
      .def("__repr__", [](const Spline& s) {
        return "Spline(degree=" + std::to_string(s.degree()) +
               ", dim=" + std::to_string(s.dim()) + ")";
      });

  py::class_<CoarsenStep>(m, "CoarsenStep")
      .def_readonly("breakpoint", &CoarsenStep::breakpoint)
      .def_readonly("multiplicity_before", &CoarsenStep::multiplicity_before)
      .def_readonly("epsilon", &CoarsenStep::epsilon)
      .def_readonly("cumulative", &CoarsenStep::cumulative)
      .def_readonly("dof_after", &CoarsenStep::dof_after);

  py::class_<CoarsenReport>(m, "CoarsenReport")
      .def_readonly("steps", &CoarsenReport::steps)
      .def_readonly("budget_remaining", &CoarsenReport::budget_remaining)
      .def_readonly("all_knots_removed", &CoarsenReport::all_knots_removed)
      .def_property_readonly("result", [](const CoarsenReport& r) { return r.result(); });

  m.def("eval_derivative", &eval_spline_derivative, py::arg("s"), py::arg("x"), py::arg("order"),
        py::arg("side") = Side::right);
  m.def("xi_norm", &xi_norm);
  m.def("cp_norm", &cp_norm);
  m.def("cp_inf_norm", &cp_inf_norm);
  m.def("insert_knot", &insert_knot, py::arg("s"), py::arg("x"));
  m.def("remove_knot", &remove_knot, py::arg("s"), py::arg("breakpoint"),
        py::arg("norm") = RemovalNorm::xi,
        "Remove one knot occurrence; returns (spline, error).");
  m.def(
      "indicators",
      [](const Spline& s, IndicatorKind kind) { return compute_all_indicators(s, kind).eps; },
      py::arg("s"), py::arg("kind") = IndicatorKind::xi,
      "Removal error indicator for every interior breakpoint.");
  m.def("coarsen_l2", &coarsen_l2, py::arg("s"), py::arg("tol"));
  m.def("coarsen_linf", &coarsen_linf, py::arg("s"), py::arg("tol"));
  m.def("coarsen_h1", &coarsen_h1, py::arg("s"), py::arg("tol"));
  m.def("coarsen_to_budget", &coarsen_to_budget, py::arg("s"), py::arg("target_interior_knots"),
        py::arg("kind") = IndicatorKind::xi, py::arg("refit") = Refit::local,
        py::arg("on_step") = StepObserver{});
  m.def(
      "l2_project",
      [](const std::function<double(double)>& f, const KnotVector& space) {
        return l2_project(f, space);
      },
      py::arg("f"), py::arg("space"));
  m.def(
      "project_spline",
      [](const Spline& f, const KnotVector& space) { return l2_project(f, space); },
      py::arg("f"), py::arg("space"));
  m.def("l2_diff", &l2_diff);
  m.def("h1_diff", &h1_diff);
  m.def("to_json", &spline_to_json, py::arg("s"));
  m.def("from_json", &spline_from_json, py::arg("text"));
}
