#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "splc/removal.hpp"

namespace splc {

/// Per-breakpoint removal indicators for the current knot vector.
struct IndicatorCache {
  IndicatorKind kind = IndicatorKind::xi;
  KnotVector space;
  std::vector<double> eps;  ///< eps[j-2] for interior breakpoints j = 2..N-1

  IndicatorCache(IndicatorKind k, KnotVector kv) : kind(k), space(std::move(kv)) {}
};

/// Description of a just-performed removal step, for incremental updates.
struct RemovalInfo {
  int j_star = 0;    ///< breakpoint index removed (in the pre-removal vector)
  int i_star = 0;    ///< knot index removed (1-based, pre-removal vector)
  int ell_star = 0;  ///< remaining multiplicity of that breakpoint
};

struct CoarsenStep {
  double breakpoint = 0.0;
  int multiplicity_before = 0;
  double epsilon = 0.0;
  double cumulative = 0.0;
  int dof_after = 0;
};

struct CoarsenReport {
  std::vector<CoarsenStep> steps;
  std::optional<Spline> final;
  double budget_remaining = 0.0;
  bool all_knots_removed = false;

  const Spline& result() const { return *final; }
};

IndicatorCache compute_all_indicators(const Spline& s, IndicatorKind kind);

/// Incremental cache update after one removal; equals a full recompute.
IndicatorCache update_indicators(const IndicatorCache& cache, const Spline& s_new,
                                 const RemovalInfo& removal);

/// Greedy removals with guarantee ||s - result||_Xi < tol (hence also L2).
CoarsenReport coarsen_l2(const Spline& s, double tol);

/// Greedy removals with guarantee ||s - result||_{L^inf} < tol.
CoarsenReport coarsen_linf(const Spline& s, double tol);

/// Coarsens the derivative in L2 and integrates back; guarantees
/// ||s - result||_{H^1} < tol and result(a) = s(a).
CoarsenReport coarsen_h1(const Spline& s, double tol);

enum class Refit {
  local,      ///< local solve matching the indicator's norm
  global_l2,  ///< L2 projection of the original spline after each step
};

using StepObserver = std::function<void(const Spline&, const CoarsenStep&)>;

/// Greedy removals until exactly target_interior_knots remain (counted with
/// multiplicity). Every step is logged with its indicator value; an optional
/// observer sees the spline after each removal.
CoarsenReport coarsen_to_budget(const Spline& s, int target_interior_knots, IndicatorKind kind,
                                Refit refit, const StepObserver& on_step = {});

}  // namespace splc
