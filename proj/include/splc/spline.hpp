#pragma once

#include <vector>

#include "splc/knot_vector.hpp"

namespace splc {

/// A spline as a knot vector plus control points.
class Spline {
 public:
  Spline(KnotVector space, std::vector<double> control_points);

  const KnotVector& space() const { return space_; }
  const std::vector<double>& control_points() const { return coef_; }
  /// 1-based control point accessor.
  double coef(int i) const { return coef_[i - 1]; }
  int dim() const { return static_cast<int>(coef_.size()); }
  int degree() const { return space_.degree(); }

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;

 private:
  KnotVector space_;
  std::vector<double> coef_;
};

/// One-sided derivative D^order s at x; side selects the limit at breakpoints.
double eval_spline_derivative(const Spline& s, double x, int order, Side side);

/// Weighted control-point norm ||E_Xi c||_2; an upper bound for ||s||_{L^2}.
double xi_norm(const Spline& s);
/// Euclidean norm of the control points.
double cp_norm(const Spline& s);
/// Max norm of the control points; an upper bound for ||s||_{L^inf}.
double cp_inf_norm(const Spline& s);

/// Knot insertion: same function on the enriched vector.
Spline insert_knot(const Spline& s, double x);

/// Right-derivative of an open, continuous spline, one degree lower.
Spline derivative_spline(const Spline& s);

/// Antiderivative with prescribed value at the left endpoint; inverse of
/// derivative_spline.
Spline antiderivative_spline(const Spline& sprime, double left_value);

}  // namespace splc
