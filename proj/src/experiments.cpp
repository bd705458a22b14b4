#include "splc/experiments.hpp"

#include <algorithm>
#include <cmath>

namespace splc {

double middle_decade_slope(const CoarsenCurve& curve) {
  std::vector<double> lx, ly;
  double lo_dof = 1e300, hi_dof = 0.0;
  for (int d : curve.dofs) {
    lo_dof = std::min(lo_dof, static_cast<double>(d));
    hi_dof = std::max(hi_dof, static_cast<double>(d));
  }
  const double center = std::sqrt(lo_dof * hi_dof);
  const double lo = center / std::sqrt(10.0), hi = center * std::sqrt(10.0);
  for (std::size_t k = 0; k < curve.dofs.size(); ++k) {
    const double d = curve.dofs[k];
    if (d < lo || d > hi || curve.errors[k] <= 0.0) continue;
    lx.push_back(std::log10(d));
    ly.push_back(std::log10(curve.errors[k]));
  }
  const std::size_t m = lx.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < m; ++k) {
    sx += lx[k];
    sy += ly[k];
    sxx += lx[k] * lx[k];
    sxy += lx[k] * ly[k];
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double error_at_dof(const CoarsenCurve& curve, int dof) {
  // dofs decrease along the replay
  for (std::size_t k = 0; k < curve.dofs.size(); ++k) {
    if (curve.dofs[k] == dof) return curve.errors[k];
    if (curve.dofs[k] < dof && k > 0) {
      const double t = static_cast<double>(dof - curve.dofs[k]) /
                       (curve.dofs[k - 1] - curve.dofs[k]);
      return std::exp((1.0 - t) * std::log(curve.errors[k]) + t * std::log(curve.errors[k - 1]));
    }
  }
  return curve.errors.back();
}

FunctionCoarsenResult function_coarsen_experiment(const RealFunction& f, double a, double b, int p,
                                                  int min_refined_dof, int target_interior,
                                                  int num_strategies) {
  // Refine until the space is rich enough for a meaningful replay.
  int steps = 4;
  std::vector<std::pair<KnotVector, Spline>> seq;
  while (true) {
    seq = adaptive_refine(f, p, a, b, steps);
    if (seq.back().first.dim() >= min_refined_dof || steps > 60) break;
    steps += 4;
  }
  const KnotVector& fine_space = seq.back().first;
  const Spline& fine = seq.back().second;
  std::vector<double> fine_breaks(fine_space.num_breakpoints());
  for (int j = 1; j <= fine_space.num_breakpoints(); ++j) {
    fine_breaks[j - 1] = fine_space.breakpoint(j);
  }

  FunctionCoarsenResult result;
  result.degree = p;
  result.initial_dof = fine.dim();

  struct StrategyDef {
    const char* label;
    IndicatorKind kind;
    Refit refit;
  };
  const StrategyDef defs[4] = {
      {"xi", IndicatorKind::xi, Refit::local},
      {"cp", IndicatorKind::cp, Refit::local},
      {"D", IndicatorKind::d, Refit::global_l2},
      {"jump", IndicatorKind::jump, Refit::global_l2},
  };
  for (int si = 0; si < num_strategies; ++si) {
    CoarsenCurve curve;
    curve.label = defs[si].label;
    curve.dofs.push_back(fine.dim());
    curve.errors.push_back(l2_error(f, fine, 2 * (p + 1)));
    coarsen_to_budget(fine, target_interior, defs[si].kind, defs[si].refit,
                      [&](const Spline& s, const CoarsenStep& step) {
                        curve.dofs.push_back(step.dof_after);
                        curve.errors.push_back(l2_error(f, s, 2 * (p + 1), fine_breaks));
                      });
    result.strategies.push_back(std::move(curve));
  }
  return result;
}

DataReductionResult linf_sample_experiment(const SampleSet& data, int target_interior) {
  const Spline s = samples_to_c0_cubic(data);
  CoarsenReport report =
      coarsen_to_budget(s, target_interior, IndicatorKind::linf, Refit::local);
  DataReductionResult result{target_interior, 0.0,
                             report.steps.empty() ? 0.0 : report.steps.back().cumulative,
                             report.result(), {}};
  for (std::size_t i = 0; i < data.x.size(); ++i) {
    result.max_sample_error =
        std::max(result.max_sample_error, std::abs(result.spline.eval(data.x[i]) - data.y[i]));
  }
  result.report = std::move(report);
  return result;
}

HeatExperimentResult heat_experiment(int p, int breakpoints, double dt, double t_end,
                                     double h1_tol) {
  const RealFunction u0 = builtin_function("heat-u0");
  HeatExperimentResult result;
  result.degree = p;
  result.coarse = heat_solve(u0, p, breakpoints, dt, t_end, true, h1_tol);
  result.reference = heat_solve(u0, p, breakpoints, dt, t_end, false, h1_tol);
  result.initial_projection_error =
      l2_error(u0, result.reference.snapshots.front(), 2 * (p + 1));
  result.final_l2_difference =
      l2_diff(result.coarse.final_state(), result.reference.final_state());
  result.initial_dof = result.coarse.dofs.front();
  result.final_dof = result.coarse.dofs.back();
  return result;
}

}  // namespace splc
