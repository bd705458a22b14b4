#pragma once

#include <utility>
#include <vector>

#include "splc/spline.hpp"

namespace splc {

/// Indicator families for greedy knot selection.
enum class IndicatorKind { xi, cp, d, jump, linf };

/// Norm in which a single removal refits the local control points.
enum class RemovalNorm { xi, cp, linf };

/// All local quantities for removing one occurrence of the breakpoint
/// zeta_{j0}. Vector entries follow the textbook local indexing
/// 1..L with L = p+2-ell.
struct RemovalContext {
  int j0 = 0;        ///< breakpoint index, 2..N-1
  int i0 = 0;        ///< last knot index with xi_{i0} = zeta_{j0}
  int ell = 0;       ///< multiplicity minus one
  int L = 0;         ///< local block size p+2-ell
  double zeta = 0.0; ///< breakpoint value

  std::vector<double> alpha;    ///< convex insertion weights, length L
  std::vector<double> e;        ///< local Xi-weights, length L
  std::vector<double> mu;       ///< recurrence multipliers, length L-1
  std::vector<double> r;        ///< Xi-norm error functional, length L
  std::vector<double> r_tilde;  ///< cp-norm error functional, length L
  std::vector<double> d;        ///< D indicator functional, length L
  std::vector<double> z;        ///< jump functional, length L
  double gamma = 0.0;
  double gamma_tilde = 0.0;
  double c_loc_const = 0.0;  ///< C_loc relating error and jump

  /// First global (1-based) control point index touched: i0-p-1.
  int first_coef_index() const { return i0 - L - ell + 1; }
};

RemovalContext build_removal_context(const KnotVector& kv, int j0);

/// The local control point block c_loc = (c_{i0-p-1},...,c_{i0-ell}).
std::vector<double> local_control_points(const Spline& s, const RemovalContext& ctx);

/// Removal error in the Xi-norm: |r^T c_loc|.
double error_xi(const Spline& s, const RemovalContext& ctx);
/// Removal error in the cp-norm: |r_tilde^T c_loc|.
double error_cp(const Spline& s, const RemovalContext& ctx);
/// |D| indicator: |d^T c_loc|.
double indicator_D(const Spline& s, const RemovalContext& ctx);
/// Signed jump of D^{p-ell} s at the breakpoint: z^T c_loc.
double jump_value(const Spline& s, const RemovalContext& ctx);
/// Value of the requested indicator family on c_loc.
double indicator(const Spline& s, const RemovalContext& ctx, IndicatorKind kind);

/// Least squares solution of E_loc A_loc x = E_loc c_loc.
std::vector<double> best_local_l2(const RemovalContext& ctx, const std::vector<double>& c_loc);
/// Least squares solution of A_loc x = c_loc (unweighted, cp-norm refit).
std::vector<double> best_local_cp(const RemovalContext& ctx, const std::vector<double>& c_loc);
/// Minimax refit: unique argmin of ||c_loc - A_loc x||_inf and its error.
std::pair<std::vector<double>, double> best_local_linf(const RemovalContext& ctx,
                                                       const std::vector<double>& c_loc);

/// Removes one occurrence of breakpoint j0, refitting in the requested norm;
/// returns the coarser spline and the step error.
std::pair<Spline, double> remove_knot(const Spline& s, int j0, RemovalNorm norm);

/// Assembles the coarser spline from a context and already-solved local block.
Spline assemble_removed(const Spline& s, const RemovalContext& ctx,
                        const std::vector<double>& new_c_loc);

}  // namespace splc
