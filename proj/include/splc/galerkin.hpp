#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "splc/spline.hpp"

namespace splc {

using RealFunction = std::function<double(double)>;

/// Gauss-Legendre nodes and weights on [-1, 1]; exact through degree 2q-1.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int q);

/// Per-span Gauss rule on the breakpoint partition of a knot vector.
struct QuadRule {
  std::vector<double> points;   ///< all nodes, span by span
  std::vector<double> weights;  ///< matching weights; sum = b - a
  int points_per_span = 0;
};

QuadRule gauss_rule(const KnotVector& kv, int points_per_span);

/// Symmetric banded matrix in packed lower storage; Cholesky solves.
class BandedSymmetricMatrix {
 public:
  BandedSymmetricMatrix(int n, int bandwidth);

  int size() const { return n_; }
  int bandwidth() const { return bw_; }

  /// Entry accessor for |i-j| <= bandwidth, 0-based, lower triangle.
  double& at(int i, int j);
  double at(int i, int j) const;

  /// In-place Cholesky; throws SolverFailure on a nonpositive pivot.
  BandedSymmetricMatrix cholesky() const;
  /// Solve with a precomputed Cholesky factor of *this.
  std::vector<double> solve(const std::vector<double>& rhs) const;
  /// Matrix-vector product using the symmetric band.
  std::vector<double> apply(const std::vector<double>& x) const;

 private:
  int n_, bw_;
  std::vector<double> data_;  // data_[i*(bw_+1) + (i-j)]
};

BandedSymmetricMatrix assemble_mass(const KnotVector& space);
BandedSymmetricMatrix assemble_stiffness(const KnotVector& space);

/// L2 projection via the Gram system; quadrature with p+1 points per span.
Spline l2_project(const RealFunction& f, const KnotVector& space);

/// L2 projection of a spline living on a finer partition; integrates over the
/// union of breakpoints so the Gram and load integrals are exact.
Spline l2_project(const Spline& f, const KnotVector& space);

/// L2 norm of f - s by per-span quadrature on the union of s's breakpoints
/// and extra_breakpoints.
double l2_error(const RealFunction& f, const Spline& s, int points_per_span,
                const std::vector<double>& extra_breakpoints = {});

/// L2 norm of the difference of two splines over the union of breakpoints.
double l2_diff(const Spline& s1, const Spline& s2);
/// H1 norm of the difference (L2 part plus first-derivative seminorm).
double h1_diff(const Spline& s1, const Spline& s2);

/// Max-strategy adaptive refinement of C^0 spaces (interior multiplicity p).
/// Returns the projection at the initial mesh and after each of `steps`
/// bisection rounds.
std::vector<std::pair<KnotVector, Spline>> adaptive_refine(const RealFunction& f, int p, double a,
                                                           double b, int steps);

struct HeatRun {
  std::vector<double> times;
  std::vector<int> dofs;  ///< space dimension used at each step
  std::vector<Spline> snapshots;  ///< s_0 and the final state only
  const Spline& final_state() const { return snapshots.back(); }
};

/// Backward Euler for the 1D heat equation with natural Neumann conditions on
/// a maximum-smoothness spline space; optional per-step H1 coarsening.
HeatRun heat_solve(const RealFunction& u0, int p, int breakpoints, double dt, double t_end,
                   bool coarsen, double h1_tol);

}  // namespace splc
