#include "splc/coarsen.hpp"

#include <cmath>
#include <string>

#include "splc/galerkin.hpp"

namespace splc {
namespace {

// Smallest indicator wins; ties go to the smallest breakpoint index.
int argmin_breakpoint(const std::vector<double>& eps) {
  int best = 0;
  for (int k = 1; k < static_cast<int>(eps.size()); ++k) {
    if (eps[k] < eps[best]) best = k;
  }
  return best + 2;  // eps[k] belongs to breakpoint j = k + 2
}

std::vector<double> local_refit(const RemovalContext& ctx, const std::vector<double>& c_loc,
                                IndicatorKind kind) {
  switch (kind) {
    case IndicatorKind::cp: return best_local_cp(ctx, c_loc);
    case IndicatorKind::linf: return best_local_linf(ctx, c_loc).first;
    default: return best_local_l2(ctx, c_loc);
  }
}

// Shared greedy loop of the tolerance-driven algorithms.
CoarsenReport greedy_tolerance(const Spline& s, double tol, IndicatorKind kind) {
  const int k_max = s.space().num_interior_knots();
  CoarsenReport report;
  Spline cur = s;
  IndicatorCache cache = compute_all_indicators(cur, kind);
  double budget = tol;
  double cumulative = 0.0;
  int k = 0;
  while (k < k_max && !cache.eps.empty()) {
    const int j_star = argmin_breakpoint(cache.eps);
    const double eps = cache.eps[j_star - 2];
    if (!(eps < budget)) break;
    budget -= eps;
    const RemovalContext ctx = build_removal_context(cur.space(), j_star);
    const std::vector<double> c_loc = local_control_points(cur, ctx);
    Spline next = assemble_removed(cur, ctx, local_refit(ctx, c_loc, kind));
    const RemovalInfo info{j_star, ctx.i0, ctx.ell};
    cache = update_indicators(cache, next, info);
    cur = std::move(next);
    cumulative += eps;
    ++k;
    report.steps.push_back({ctx.zeta, ctx.ell + 1, eps, cumulative, cur.dim()});
  }
  report.final = std::move(cur);
  report.budget_remaining = budget;
  report.all_knots_removed = (k == k_max);
  return report;
}

}  // namespace

IndicatorCache compute_all_indicators(const Spline& s, IndicatorKind kind) {
  IndicatorCache cache(kind, s.space());
  const int N = s.space().num_breakpoints();
  cache.eps.resize(std::max(0, N - 2));
  for (int j = 2; j <= N - 1; ++j) {
    cache.eps[j - 2] = indicator(s, build_removal_context(s.space(), j), kind);
  }
  return cache;
}

IndicatorCache update_indicators(const IndicatorCache& cache, const Spline& s_new,
                                 const RemovalInfo& removal) {
  if (!(cache.space.erased(removal.i_star) == s_new.space())) {
    fail(errc::stale_cache, "cache does not match the vector before the removal");
  }
  const KnotVector& kv = s_new.space();
  const int p = kv.degree();
  const int i_star = removal.i_star;
  IndicatorCache out(cache.kind, kv);
  const int N = kv.num_breakpoints();
  out.eps.resize(std::max(0, N - 2));
  for (int j = 2; j <= N - 1; ++j) {
    const int i_j = kv.last_knot_index(j);
    // Breakpoints right of the removal keep their old index only when the
    // removed breakpoint survives (ell_star >= 1).
    const int j_old = (removal.ell_star == 0 && j >= removal.j_star) ? j + 1 : j;
    if (i_j <= i_star - p - 2) {
      out.eps[j - 2] = cache.eps[j_old - 2];
    } else if (i_j >= i_star + p + 1) {
      out.eps[j - 2] = cache.eps[j_old - 2];
    } else {
      out.eps[j - 2] = indicator(s_new, build_removal_context(kv, j), cache.kind);
    }
  }
  return out;
}

CoarsenReport coarsen_l2(const Spline& s, double tol) {
  return greedy_tolerance(s, tol, IndicatorKind::xi);
}

CoarsenReport coarsen_linf(const Spline& s, double tol) {
  return greedy_tolerance(s, tol, IndicatorKind::linf);
}

CoarsenReport coarsen_h1(const Spline& s, double tol) {
  const KnotVector& kv = s.space();
  if (!kv.open()) fail(errc::not_open, "H1 coarsening requires an open knot vector");
  const double a = kv.a(), b = kv.b();
  const double scale = std::sqrt((b - a) * (b - a) + 1.0);
  const Spline sprime = derivative_spline(s);  // throws NotContinuous when m_j = p+1
  CoarsenReport inner = coarsen_l2(sprime, tol / scale);
  Spline result = antiderivative_spline(inner.result(), s.eval(a));

  // The coarse vector must be a subsequence of the original one.
  {
    const auto& fine = kv.knots();
    const auto& coarse = result.space().knots();
    std::size_t i = 0;
    for (double x : coarse) {
      while (i < fine.size() && fine[i] != x) ++i;
      if (i == fine.size()) fail(errc::solver_failure, "coarse vector is not a subsequence");
      ++i;
    }
  }

  CoarsenReport report;
  report.steps = std::move(inner.steps);
  for (auto& step : report.steps) ++step.dof_after;  // primal-space dimension
  report.budget_remaining = inner.budget_remaining * scale;
  report.all_knots_removed = inner.all_knots_removed;
  report.final = std::move(result);
  return report;
}

CoarsenReport coarsen_to_budget(const Spline& s, int target_interior_knots, IndicatorKind kind,
                                Refit refit, const StepObserver& on_step) {
  const int initial = s.space().num_interior_knots();
  if (target_interior_knots < 0 || target_interior_knots > initial) {
    fail(errc::budget_too_large, "target " + std::to_string(target_interior_knots) +
                                     " vs current " + std::to_string(initial));
  }
  CoarsenReport report;
  Spline cur = s;
  IndicatorCache cache = compute_all_indicators(cur, kind);
  double cumulative = 0.0;
  for (int remaining = initial; remaining > target_interior_knots; --remaining) {
    const int j_star = argmin_breakpoint(cache.eps);
    const double eps = cache.eps[j_star - 2];
    const RemovalContext ctx = build_removal_context(cur.space(), j_star);
    const std::vector<double> c_loc = local_control_points(cur, ctx);
    Spline next = assemble_removed(cur, ctx, local_refit(ctx, c_loc, kind));
    if (refit == Refit::global_l2) {
      next = l2_project(s, next.space());
      cache = compute_all_indicators(next, kind);
    } else {
      cache = update_indicators(cache, next, RemovalInfo{j_star, ctx.i0, ctx.ell});
    }
    cur = std::move(next);
    cumulative += eps;
    report.steps.push_back({ctx.zeta, ctx.ell + 1, eps, cumulative, cur.dim()});
    if (on_step) on_step(cur, report.steps.back());
  }
  report.final = std::move(cur);
  report.all_knots_removed = (target_interior_knots == 0);
  return report;
}

}  // namespace splc
