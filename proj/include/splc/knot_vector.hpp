#pragma once

#include <vector>

#include "splc/errors.hpp"

namespace splc {

/// One-sided limit selector for evaluation at breakpoints.
enum class Side { left, right };

/// A (p+1)-basic knot vector: nondecreasing knots with the domain endpoints
/// pinned at positions p+1 and n+1, interior multiplicities at most p+1.
///
/// All public indices are 1-based, matching the usual spline literature:
/// knots are xi_1..xi_{n+p+1}, basis functions B_1..B_n, breakpoints
/// zeta_1..zeta_N.
class KnotVector {
 public:
  /// Validates and builds a knot vector; throws on non-basic input.
  KnotVector(std::vector<double> knots, int degree);

  int degree() const { return degree_; }
  /// Number of knots.
  int num_knots() const { return static_cast<int>(knots_.size()); }
  /// Dimension n of the spline space.
  int dim() const { return num_knots() - degree_ - 1; }

  double knot(int i) const { return knots_[i - 1]; }
  const std::vector<double>& knots() const { return knots_; }

  double a() const { return knots_[degree_]; }
  double b() const { return knots_[dim()]; }

  /// Number of distinct breakpoints, boundary included.
  int num_breakpoints() const { return static_cast<int>(breakpoints_.size()); }
  double breakpoint(int j) const { return breakpoints_[j - 1]; }
  /// Multiplicity m_j; defined for interior j (2 <= j <= N-1).
  int multiplicity(int j) const { return multiplicities_[j - 1]; }
  /// Index i_j of the last knot equal to zeta_j; interior j only.
  int last_knot_index(int j) const { return last_index_[j - 1]; }
  /// Count of interior knots, multiplicities included: #knots - 2(p+1).
  int num_interior_knots() const { return num_knots() - 2 * (degree_ + 1); }

  bool open() const { return open_; }

  /// Greville abscissas xi*_i = (xi_{i+1}+...+xi_{i+p})/p; requires p >= 1.
  std::vector<double> greville() const;

  /// Scaling weights omega_i = sqrt((xi_{i+p+1}-xi_i)/(p+1)).
  std::vector<double> xi_weights() const;

  /// Span index k in [p+1, n] such that the polynomial piece on
  /// [xi_k, xi_{k+1}) gives the requested one-sided limit at x.
  int find_span(double x, Side side = Side::right) const;

  /// All p+1 B-spline values B_{k-p}(x)..B_k(x) on span k.
  std::vector<double> basis_on_span(int span, double x) const;

  /// Derivatives of the active B-splines up to the given order on span k:
  /// result[d][j] = D^d B_{k-p+j}(x), d = 0..order.
  std::vector<std::vector<double>> basis_derivatives_on_span(int span, double x, int order) const;

  /// New vector with x inserted (as the last occurrence among equal knots).
  KnotVector inserted(double x) const;
  /// New vector with the 1-based knot at position i removed.
  KnotVector erased(int i) const;

  bool operator==(const KnotVector& other) const {
    return degree_ == other.degree_ && knots_ == other.knots_;
  }

 private:
  int degree_;
  std::vector<double> knots_;
  std::vector<double> breakpoints_;
  std::vector<int> multiplicities_;
  std::vector<int> last_index_;
  bool open_ = false;
};

/// Single B-spline value B_i(x); right-continuous at interior knots,
/// left-continuous at b.
double eval_basis(const KnotVector& kv, int i, double x);

}  // namespace splc
