#include "splc/spline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace splc {

Spline::Spline(KnotVector space, std::vector<double> control_points)
    : space_(std::move(space)), coef_(std::move(control_points)) {
  if (static_cast<int>(coef_.size()) != space_.dim()) {
    fail(errc::index_out_of_range,
         "expected " + std::to_string(space_.dim()) + " control points, got " +
             std::to_string(coef_.size()));
  }
}

double Spline::eval(double x) const {
  if (x < space_.a() || x > space_.b()) {
    fail(errc::outside_domain, "x = " + std::to_string(x));
  }
  const int p = degree();
  const int span = space_.find_span(x);
  const std::vector<double> basis = space_.basis_on_span(span, x);
  double value = 0.0;
  for (int j = 0; j <= p; ++j) value += basis[j] * coef_[span - p - 1 + j];
  return value;
}

double eval_spline_derivative(const Spline& s, double x, int order, Side side) {
  const KnotVector& kv = s.space();
  if (x < kv.a() || x > kv.b()) fail(errc::outside_domain, "x = " + std::to_string(x));
  const int p = s.degree();
  if (order < 0 || order > p) fail(errc::order_too_high, "order " + std::to_string(order));
  if (x == kv.a()) side = Side::right;
  if (x == kv.b()) side = Side::left;
  const int span = kv.find_span(x, side);
  const auto ders = kv.basis_derivatives_on_span(span, x, order);
  double value = 0.0;
  for (int j = 0; j <= p; ++j) value += ders[order][j] * s.control_points()[span - p - 1 + j];
  return value;
}

double xi_norm(const Spline& s) {
  const std::vector<double> w = s.space().xi_weights();
  double sum = 0.0;
  for (int i = 0; i < s.dim(); ++i) {
    const double t = s.control_points()[i] * w[i];
    sum += t * t;
  }
  return std::sqrt(sum);
}

double cp_norm(const Spline& s) {
  double sum = 0.0;
  for (double c : s.control_points()) sum += c * c;
  return std::sqrt(sum);
}

double cp_inf_norm(const Spline& s) {
  double m = 0.0;
  for (double c : s.control_points()) m = std::max(m, std::abs(c));
  return m;
}

Spline insert_knot(const Spline& s, double x) {
  const KnotVector& coarse = s.space();
  const int p = coarse.degree();
  if (!(x > coarse.a() && x < coarse.b())) {
    fail(errc::outside_domain, "insertion point must be interior");
  }
  const KnotVector fine = coarse.inserted(x);  // throws MultiplicityExceeded when over p+1
  const int n = fine.dim();
  // i0: position of x in the fine vector as the last occurrence.
  int i0 = p + 1;
  while (i0 < n && fine.knot(i0 + 1) <= x) ++i0;
  int mult = 0;
  for (int i = 1; i <= n + p + 1; ++i) {
    if (fine.knot(i) == x) ++mult;
  }
  const int ell = mult - 1;

  const std::vector<double>& c = s.control_points();
  std::vector<double> out(n);
  for (int i = 1; i <= i0 - p - 2; ++i) out[i - 1] = c[i - 1];
  for (int i = i0 - p - 1; i <= i0 - ell; ++i) {
    const double lambda = (fine.knot(i0) - fine.knot(i)) / (fine.knot(i + p + 1) - fine.knot(i));
    out[i - 1] = lambda * c[i - 1] + (1.0 - lambda) * c[i - 2];
  }
  for (int i = i0 - ell + 1; i <= n; ++i) out[i - 1] = c[i - 2];
  return Spline(fine, std::move(out));
}

Spline derivative_spline(const Spline& s) {
  const KnotVector& kv = s.space();
  const int p = kv.degree();
  if (p < 1) fail(errc::degree_zero, "cannot lower degree 0");
  if (!kv.open()) fail(errc::not_open, "derivative map requires an open knot vector");
  for (int j = 2; j < kv.num_breakpoints(); ++j) {
    if (kv.multiplicity(j) > p) {
      fail(errc::not_continuous, "breakpoint with multiplicity p+1");
    }
  }
  const int n = kv.dim();
  const std::vector<double> g = kv.greville();
  std::vector<double> dc(n - 1);
  for (int i = 2; i <= n; ++i) {
    dc[i - 2] = (s.coef(i) - s.coef(i - 1)) / (g[i - 1] - g[i - 2]);
  }
  std::vector<double> ks(kv.knots().begin() + 1, kv.knots().end() - 1);
  return Spline(KnotVector(std::move(ks), p - 1), std::move(dc));
}

Spline antiderivative_spline(const Spline& sprime, double left_value) {
  const KnotVector& kvp = sprime.space();
  if (!kvp.open()) fail(errc::not_open, "antiderivative requires an open knot vector");
  std::vector<double> ks;
  ks.reserve(kvp.num_knots() + 2);
  ks.push_back(kvp.knots().front());
  ks.insert(ks.end(), kvp.knots().begin(), kvp.knots().end());
  ks.push_back(kvp.knots().back());
  KnotVector kv(std::move(ks), kvp.degree() + 1);
  const std::vector<double> g = kv.greville();
  const int n = kv.dim();
  std::vector<double> c(n);
  c[0] = left_value;
  for (int i = 2; i <= n; ++i) {
    c[i - 1] = sprime.coef(i - 1) * (g[i - 1] - g[i - 2]) + c[i - 2];
  }
  return Spline(std::move(kv), std::move(c));
}

}  // namespace splc
