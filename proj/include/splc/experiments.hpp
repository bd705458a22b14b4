#pragma once

#include <string>
#include <vector>

#include "splc/coarsen.hpp"
#include "splc/galerkin.hpp"
#include "splc/io.hpp"

namespace splc {

/// One coarsening replay: dimension and global L2 error after every removal.
struct CoarsenCurve {
  std::string label;
  std::vector<int> dofs;
  std::vector<double> errors;
};

/// Least-squares slope of log10(error) vs log10(dof) restricted to one decade
/// of dof centered at the geometric mean of the observed range.
double middle_decade_slope(const CoarsenCurve& curve);

/// Linear interpolation of a curve's log-error at a given dof.
double error_at_dof(const CoarsenCurve& curve, int dof);

/// Coarsening replay of an adaptively refined projection with the four
/// indicator strategies:
/// 1 = Xi (local refit), 2 = cp (local refit), 3 = |D| and 4 = |jump|
/// (both with global L2 re-projection).
struct FunctionCoarsenResult {
  int degree = 0;
  int initial_dof = 0;
  std::vector<CoarsenCurve> strategies;
};

FunctionCoarsenResult function_coarsen_experiment(const RealFunction& f, double a, double b, int p,
                                                  int min_refined_dof, int target_interior,
                                                  int num_strategies = 4);

/// Max-norm data reduction of sampled data to a fixed interior-knot budget.
struct DataReductionResult {
  int target_interior = 0;
  double max_sample_error = 0.0;
  double indicator_sum = 0.0;
  Spline spline;
  CoarsenReport report;
};

DataReductionResult linf_sample_experiment(const SampleSet& data, int target_interior);

/// Heat equation run with and without per-step H1 coarsening.
struct HeatExperimentResult {
  int degree = 0;
  double initial_projection_error = 0.0;
  double final_l2_difference = 0.0;
  int initial_dof = 0;
  int final_dof = 0;
  HeatRun coarse;
  HeatRun reference;
};

HeatExperimentResult heat_experiment(int p, int breakpoints, double dt, double t_end,
                                     double h1_tol);

}  // namespace splc
