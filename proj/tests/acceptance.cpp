// Acceptance gate: ten end-to-end criteria, one pass/fail line each.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "splc/coarsen.hpp"
#include "splc/experiments.hpp"
#include "splc/galerkin.hpp"
#include "splc/io.hpp"
#include "splc/removal.hpp"
#include "support/oracles.hpp"

using namespace splc;

namespace {

int failures = 0;
std::chrono::steady_clock::time_point t_start;

void begin() { t_start = std::chrono::steady_clock::now(); }

void report(int num, const char* what, bool ok) {
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  std::printf("%-4s %2d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", num, what, secs);
  if (!ok) ++failures;
}

struct Instance {
  Spline s;
  int j0;
};

Instance random_instance(std::mt19937& rng, int max_mult_over_p) {
  std::uniform_int_distribution<int> deg(1, 5);
  const int p = deg(rng);
  std::uniform_int_distribution<int> nz(2, 6);
  const auto kv = oracle::random_open(rng, p, nz(rng), std::max(1, p + max_mult_over_p));
  std::uniform_int_distribution<int> pick(2, kv.num_breakpoints() - 1);
  return {oracle::random_spline(rng, kv), pick(rng)};
}

// Residual of the dense global weighted least squares problem
// min_b || W (A b - c) ||_2 with A the full knot-insertion matrix.
double global_lsq_residual(const Spline& s, int j0) {
  const RemovalContext ctx = build_removal_context(s.space(), j0);
  const KnotVector coarse = s.space().erased(ctx.i0);
  const int n = s.dim();
  oracle::Matrix A(n, std::vector<double>(n - 1, 0.0));
  for (int k = 1; k <= n - 1; ++k) {
    std::vector<double> unit(n - 1, 0.0);
    unit[k - 1] = 1.0;
    const Spline lifted = insert_knot(Spline(coarse, unit), ctx.zeta);
    for (int i = 0; i < n; ++i) A[i][k - 1] = lifted.control_points()[i];
  }
  const auto w = s.space().xi_weights();
  std::vector<double> c = s.control_points();
  for (int i = 0; i < n; ++i) {
    for (auto& v : A[i]) v *= w[i];
    c[i] *= w[i];
  }
  const auto b = oracle::least_squares(A, c);
  double res = 0.0;
  for (int i = 0; i < n; ++i) {
    double ri = c[i];
    for (int k = 0; k < n - 1; ++k) ri -= A[i][k] * b[k];
    res += ri * ri;
  }
  return std::sqrt(res);
}

// Lift a coarse spline back to the fine space by re-inserting missing knots.
Spline lift_to(const Spline& coarse, const KnotVector& fine) {
  Spline cur = coarse;
  while (!(cur.space() == fine)) {
    const auto& a = cur.space().knots();
    const auto& b = fine.knots();
    std::size_t i = 0;
    while (i < a.size() && a[i] == b[i]) ++i;
    cur = insert_knot(cur, b[i]);
  }
  return cur;
}

void criterion_1_and_3() {
  std::mt19937 rng(2024);
  bool ok1 = true, ok3 = true;
  begin();
  for (int trial = 0; trial < 500; ++trial) {
    const auto [s, j0] = random_instance(rng, 1);
    const RemovalContext ctx = build_removal_context(s.space(), j0);
    const double e_loc = error_xi(s, ctx);
    const double e_glob = global_lsq_residual(s, j0);
    const double scale = std::max(1e-30, std::max(e_loc, e_glob));
    if (std::abs(e_loc - e_glob) > 1e-10 * scale) ok1 = false;

    const double jv = jump_value(s, ctx);
    if (std::abs(e_loc - std::abs(ctx.c_loc_const) * std::abs(jv)) > 1e-10 * e_loc + 1e-14) {
      ok3 = false;
    }
    const int order = s.degree() - ctx.ell;
    const double analytic = eval_spline_derivative(s, ctx.zeta, order, Side::right) -
                            eval_spline_derivative(s, ctx.zeta, order, Side::left);
    if (std::abs(jv - analytic) > 1e-9 * std::max(1.0, std::abs(analytic))) ok3 = false;
  }
  report(1, "local error formula == dense global weighted LSQ residual (500 runs)", ok1);
  report(2, "pinned hand-worked removal instance to 1e-14", [] {
    const KnotVector kv({0, 0, 0, 1, 2, 3, 4, 4, 4}, 2);
    const RemovalContext ctx = build_removal_context(kv, 3);
    const double q = 1.0 / std::sqrt(21.0);
    const std::vector<double> alpha = {1.0, 2.0 / 3.0, 1.0 / 3.0, 0.0};
    const std::vector<double> mu = {1.0 / 3.0, 1.0, 3.0};
    const std::vector<double> r = {-q, 3 * q, -3 * q, q};
    const std::vector<double> z = {-1, 3, -3, 1};
    bool ok = std::abs(ctx.gamma - 1.0 / std::sqrt(14.0)) < 1e-14 &&
              std::abs(ctx.c_loc_const - q) < 1e-14;
    for (int j = 0; j < 4; ++j) {
      ok = ok && std::abs(ctx.alpha[j] - alpha[j]) < 1e-14 && std::abs(ctx.r[j] - r[j]) < 1e-14 &&
           std::abs(ctx.z[j] - z[j]) < 1e-14;
      if (j < 3) ok = ok && std::abs(ctx.mu[j] - mu[j]) < 1e-14;
    }
    return ok;
  }());
  begin();
  report(3, "removal error == C_loc * derivative jump; jump is analytic (500 runs)", ok3);
}

void criterion_4() {
  std::mt19937 rng(77);
  bool ok = true;
  begin();
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> deg(1, 5);
    const int p = deg(rng);
    const auto kv = oracle::random_open(rng, p, 3, std::max(1, p));
    const Spline coarse = oracle::random_spline(rng, kv);
    std::uniform_real_distribution<double> unif(0.1, 0.9);
    const Spline fine = insert_knot(coarse, unif(rng));
    int j0 = 0;
    // locate the inserted breakpoint: new value or bumped multiplicity
    for (int j = 2; j < fine.space().num_breakpoints(); ++j) {
      const double z = fine.space().breakpoint(j);
      bool was = false;
      for (int jj = 2; jj < kv.num_breakpoints(); ++jj) {
        was = was || (kv.breakpoint(jj) == z &&
                      kv.multiplicity(jj) == fine.space().multiplicity(j));
      }
      if (!was) j0 = j;
    }
    const double scale = cp_inf_norm(fine);
    for (auto norm : {RemovalNorm::xi, RemovalNorm::cp, RemovalNorm::linf}) {
      const auto [back, err] = remove_knot(fine, j0, norm);
      if (err > 1e-12 * std::max(1.0, scale)) ok = false;
      for (int i = 0; i < coarse.dim(); ++i) {
        if (std::abs(back.control_points()[i] - coarse.control_points()[i]) > 1e-12 *
            std::max(1.0, scale)) {
          ok = false;
        }
      }
    }
  }
  report(4, "insert-then-remove round trip in every refit norm (200 runs)", ok);
}

void criteria_5_and_6() {
  std::mt19937 rng(555);
  bool ok5 = true, ok6 = true;
  begin();
  for (int trial = 0; trial < 100; ++trial) {
    const int p = 2 + trial % 3;
    const auto kv = oracle::random_open(rng, p, 6, trial % 2 ? 2 : 1);
    const Spline s = oracle::random_spline(rng, kv);
    std::uniform_real_distribution<double> tolpick(0.01, 1.0);
    const double tol = tolpick(rng);

    {  // L2: lifted Xi-difference and quadrature L2 both under the tolerance
      const CoarsenReport rep = coarsen_l2(s, tol);
      const Spline lifted = lift_to(rep.result(), kv);
      std::vector<double> diff(s.dim());
      for (int i = 0; i < s.dim(); ++i) {
        diff[i] = s.control_points()[i] - lifted.control_points()[i];
      }
      if (!(xi_norm(Spline(kv, diff)) < tol)) ok5 = false;
      if (!(l2_diff(s, rep.result()) < tol)) ok5 = false;
    }
    {  // Linf on a dense grid
      const CoarsenReport rep = coarsen_linf(s, tol);
      double worst = 0.0;
      for (int i = 0; i <= 10000; ++i) {
        const double x = kv.a() + (kv.b() - kv.a()) * i / 10000.0;
        worst = std::max(worst, std::abs(s(x) - rep.result()(x)));
      }
      if (!(worst < tol)) ok5 = false;
    }
    {  // H1 plus exact left endpoint (needs continuous input)
      const auto kvc = oracle::random_open(rng, p, 6, 1);
      const Spline sc = oracle::random_spline(rng, kvc);
      const CoarsenReport rep = coarsen_h1(sc, tol);
      if (!(h1_diff(sc, rep.result()) < tol)) ok5 = false;
      // the left endpoint value is pinned exactly in the first coefficient
      if (rep.result().control_points().front() != sc(kvc.a())) ok5 = false;
    }

    // replay of the greedy L2 loop checking the incremental cache each step
    {
      Spline cur = s;
      IndicatorCache cache = compute_all_indicators(cur, IndicatorKind::xi);
      double budget = tol;
      while (!cache.eps.empty()) {
        int best = 0;
        for (int k = 1; k < static_cast<int>(cache.eps.size()); ++k) {
          if (cache.eps[k] < cache.eps[best]) best = k;
        }
        if (!(cache.eps[best] < budget)) break;
        budget -= cache.eps[best];
        const auto ctx = build_removal_context(cur.space(), best + 2);
        Spline next = assemble_removed(
            cur, ctx, best_local_l2(ctx, local_control_points(cur, ctx)));
        cache = update_indicators(cache, next, RemovalInfo{best + 2, ctx.i0, ctx.ell});
        const IndicatorCache full = compute_all_indicators(next, IndicatorKind::xi);
        for (std::size_t k = 0; k < full.eps.size(); ++k) {
          if (std::abs(cache.eps[k] - full.eps[k]) > 1e-14 * std::max(1.0, full.eps[k])) {
            ok6 = false;
          }
        }
        cur = std::move(next);
      }
    }
  }
  report(5, "tolerance guarantees in L2, Linf and H1 (100 runs each)", ok5);
  begin();
  report(6, "incremental indicator update == full recompute along greedy runs", ok6);
}

void criterion_7() {
  begin();
  bool ok = true;
  for (int p : {2, 4}) {
    const auto res = function_coarsen_experiment(builtin_function("runge"), -5.0, 5.0, p,
                                                 p == 2 ? 1200 : 2400, 8);
    for (int k = 0; k < 3; ++k) {
      const double slope = middle_decade_slope(res.strategies[k]);
      if (!(slope <= -(p + 0.5))) {
        std::printf("       p=%d strategy %d slope %.2f\n", p, k + 1, slope);
        ok = false;
      }
    }
    const double term1 = res.strategies[0].errors.back();
    const double term4 = res.strategies[3].errors.back();
    if (!(term4 >= 10.0 * term1)) {
      std::printf("       p=%d terminal errors: strategy1 %.3e strategy4 %.3e\n", p, term1, term4);
      ok = false;
    }
  }
  report(7, "peak-function coarsening: optimal slopes, derivative-jump strategy poor", ok);
}

void criterion_8() {
  begin();
  SampleSet data;
  const RealFunction f = builtin_function("runge");
  for (int i = 0; i < 101; ++i) {
    data.x.push_back(-5.0 + 0.1 * i);
    data.y.push_back(f(data.x.back()));
  }
  bool ok = samples_to_c0_cubic(data).space().num_interior_knots() == 297;
  const auto r7 = linf_sample_experiment(data, 7);
  const auto r3 = linf_sample_experiment(data, 3);
  ok = ok && r7.spline.space().num_interior_knots() == 7;
  ok = ok && r3.spline.space().num_interior_knots() == 3;
  ok = ok && r7.max_sample_error <= r7.indicator_sum;
  ok = ok && r3.max_sample_error <= r3.indicator_sum;
  ok = ok && r3.max_sample_error >= r7.max_sample_error;
  report(8, "max-norm reduction of 101 samples to 7 and 3 interior knots", ok);
}

void criterion_9() {
  bool ok = true;
  for (int p : {2, 3, 4}) {
    begin();
    const auto res = heat_experiment(p, 1001, 0.01, 1.0, 1e-3);
    bool this_ok = res.initial_projection_error >= 1e-5 && res.initial_projection_error <= 1e-3;
    this_ok = this_ok && res.final_l2_difference < 1e-3;
    for (std::size_t k = 1; k < res.coarse.dofs.size(); ++k) {
      this_ok = this_ok && res.coarse.dofs[k] <= res.coarse.dofs[k - 1];
    }
    this_ok = this_ok && res.final_dof <= (3 * res.initial_dof) / 10;
    if (!this_ok) {
      std::printf("       p=%d proj %.2e diff %.2e dof %d -> %d\n", p,
                  res.initial_projection_error, res.final_l2_difference, res.initial_dof,
                  res.final_dof);
    }
    ok = ok && this_ok;
    char what[96];
    std::snprintf(what, sizeof what, "heat equation with per-step H1 coarsening, degree %d", p);
    report(9, what, this_ok);
  }
  (void)ok;
}

void criterion_10() {
  std::mt19937 rng(1010);
  bool ok = true;
  begin();
  for (int trial = 0; trial < 60; ++trial) {
    const auto [s, j0] = random_instance(rng, 1);
    const KnotVector& kv = s.space();
    // partition of unity on a grid
    for (int g = 0; g <= 100; ++g) {
      const double x = kv.a() + (kv.b() - kv.a()) * g / 100.0;
      double sum = 0.0;
      for (int i = 1; i <= kv.dim(); ++i) sum += eval_basis(kv, i, x);
      if (std::abs(sum - 1.0) > 1e-12) ok = false;
    }
    // annihilation and normalization of the error functional
    const RemovalContext ctx = build_removal_context(kv, j0);
    for (int col = 1; col <= ctx.L - 1; ++col) {
      double v = ctx.r[col - 1] * ctx.alpha[col - 1];
      if (col < ctx.L) v += ctx.r[col] * (1.0 - ctx.alpha[col]);
      if (std::abs(v) > 1e-12) ok = false;
    }
    double nrm = 0.0;
    for (int j = 0; j < ctx.L; ++j) nrm += (ctx.r[j] / ctx.e[j]) * (ctx.r[j] / ctx.e[j]);
    if (std::abs(std::sqrt(nrm) - 1.0) > 1e-12) ok = false;
    // norm bounds
    const double l2 = std::sqrt(
        oracle::simpson([&](double x) { return s(x) * s(x); }, kv.a(), kv.b(), 2000));
    if (l2 > xi_norm(s) * (1 + 1e-10)) ok = false;
    double linf = 0.0;
    for (int g = 0; g <= 500; ++g) {
      linf = std::max(linf, std::abs(s(kv.a() + (kv.b() - kv.a()) * g / 500.0)));
    }
    if (linf > cp_inf_norm(s) * (1 + 1e-12)) ok = false;
    // stiffness kernel and basis integrals
    if (s.degree() >= 1) {
      const auto K = assemble_stiffness(kv);
      for (double v : K.apply(std::vector<double>(kv.dim(), 1.0))) {
        if (std::abs(v) > 1e-10) ok = false;
      }
    }
    const auto M = assemble_mass(kv);
    const auto w = kv.xi_weights();
    const auto rows = M.apply(std::vector<double>(kv.dim(), 1.0));
    for (int i = 0; i < kv.dim(); ++i) {
      if (std::abs(rows[i] - w[i] * w[i]) > 1e-12) ok = false;
    }
  }
  report(10, "invariant suite on the randomized corpus", ok);
}

}  // namespace

int main() {
  criterion_1_and_3();
  criterion_4();
  criteria_5_and_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (failures != 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
