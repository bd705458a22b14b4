#include "splc/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "splc/coarsen.hpp"

namespace splc {
namespace {

std::vector<double> distinct_breakpoints(const KnotVector& kv) {
  std::vector<double> z(kv.num_breakpoints());
  for (int j = 1; j <= kv.num_breakpoints(); ++j) z[j - 1] = kv.breakpoint(j);
  return z;
}

std::vector<double> merge_sorted_unique(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int q) {
  std::vector<double> x(q), w(q);
  for (int i = 0; i < q; ++i) {
    // Newton iteration from the Chebyshev initial guess.
    double t = std::cos(M_PI * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      if (q == 1) p1 = t;
      for (int k = 2; k <= q; ++k) {
        const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pq = (q == 1) ? t : p1;
      dp = q * (t * pq - p0) / (t * t - 1.0);
      const double dt = pq / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  return {std::move(x), std::move(w)};
}

QuadRule gauss_rule(const KnotVector& kv, int points_per_span) {
  const auto [gx, gw] = gauss_legendre(points_per_span);
  const std::vector<double> z = distinct_breakpoints(kv);
  QuadRule rule;
  rule.points_per_span = points_per_span;
  for (std::size_t s = 0; s + 1 < z.size(); ++s) {
    const double mid = 0.5 * (z[s] + z[s + 1]);
    const double half = 0.5 * (z[s + 1] - z[s]);
    for (int i = 0; i < points_per_span; ++i) {
      rule.points.push_back(mid + half * gx[i]);
      rule.weights.push_back(half * gw[i]);
    }
  }
  return rule;
}

BandedSymmetricMatrix::BandedSymmetricMatrix(int n, int bandwidth)
    : n_(n), bw_(bandwidth), data_(static_cast<std::size_t>(n) * (bandwidth + 1), 0.0) {}

double& BandedSymmetricMatrix::at(int i, int j) {
  if (j > i) std::swap(i, j);
  return data_[static_cast<std::size_t>(i) * (bw_ + 1) + (i - j)];
}

double BandedSymmetricMatrix::at(int i, int j) const {
  if (j > i) std::swap(i, j);
  if (i - j > bw_) return 0.0;
  return data_[static_cast<std::size_t>(i) * (bw_ + 1) + (i - j)];
}

BandedSymmetricMatrix BandedSymmetricMatrix::cholesky() const {
  BandedSymmetricMatrix L(n_, bw_);
  for (int j = 0; j < n_; ++j) {
    double d = at(j, j);
    for (int k = std::max(0, j - bw_); k < j; ++k) d -= L.at(j, k) * L.at(j, k);
    if (!(d > 0.0)) fail(errc::solver_failure, "matrix is not positive definite");
    L.at(j, j) = std::sqrt(d);
    for (int i = j + 1; i <= std::min(n_ - 1, j + bw_); ++i) {
      double s = at(i, j);
      for (int k = std::max(0, i - bw_); k < j; ++k) s -= L.at(i, k) * L.at(j, k);
      L.at(i, j) = s / L.at(j, j);
    }
  }
  return L;
}

std::vector<double> BandedSymmetricMatrix::solve(const std::vector<double>& rhs) const {
  // *this must hold the Cholesky factor.
  std::vector<double> y(n_);
  for (int i = 0; i < n_; ++i) {
    double v = rhs[i];
    for (int k = std::max(0, i - bw_); k < i; ++k) v -= at(i, k) * y[k];
    y[i] = v / at(i, i);
  }
  for (int i = n_ - 1; i >= 0; --i) {
    double v = y[i];
    for (int k = i + 1; k <= std::min(n_ - 1, i + bw_); ++k) v -= at(k, i) * y[k];
    y[i] = v / at(i, i);
  }
  return y;
}

std::vector<double> BandedSymmetricMatrix::apply(const std::vector<double>& x) const {
  std::vector<double> y(n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    for (int j = std::max(0, i - bw_); j <= std::min(n_ - 1, i + bw_); ++j) {
      y[i] += at(i, j) * x[j];
    }
  }
  return y;
}

namespace {

enum class Form { mass, stiffness };

BandedSymmetricMatrix assemble(const KnotVector& space, Form form) {
  const int p = space.degree();
  const int n = space.dim();
  BandedSymmetricMatrix A(n, p);
  const auto [gx, gw] = gauss_legendre(p + 1);
  const std::vector<double> z = distinct_breakpoints(space);
  for (std::size_t s = 0; s + 1 < z.size(); ++s) {
    const double mid = 0.5 * (z[s] + z[s + 1]);
    const double half = 0.5 * (z[s + 1] - z[s]);
    const int span = space.find_span(mid);
    for (std::size_t q = 0; q < gx.size(); ++q) {
      const double x = mid + half * gx[q];
      const double w = half * gw[q];
      std::vector<double> vals;
      if (form == Form::mass) {
        vals = space.basis_on_span(span, x);
      } else {
        vals = space.basis_derivatives_on_span(span, x, 1)[1];
      }
      for (int a = 0; a <= p; ++a) {
        for (int b = 0; b <= a; ++b) {
          A.at(span - p - 1 + a, span - p - 1 + b) += w * vals[a] * vals[b];
        }
      }
    }
  }
  return A;
}

}  // namespace

BandedSymmetricMatrix assemble_mass(const KnotVector& space) {
  return assemble(space, Form::mass);
}

BandedSymmetricMatrix assemble_stiffness(const KnotVector& space) {
  if (space.degree() < 1) fail(errc::degree_zero, "stiffness needs degree >= 1");
  return assemble(space, Form::stiffness);
}

namespace {

Spline project_with_rhs(const KnotVector& space, const std::vector<double>& rhs) {
  const BandedSymmetricMatrix G = assemble_mass(space);
  const std::vector<double> c = G.cholesky().solve(rhs);
  return Spline(space, c);
}

}  // namespace

Spline l2_project(const RealFunction& f, const KnotVector& space) {
  const int p = space.degree();
  const int n = space.dim();
  std::vector<double> rhs(n, 0.0);
  const auto [gx, gw] = gauss_legendre(p + 1);
  const std::vector<double> z = distinct_breakpoints(space);
  for (std::size_t s = 0; s + 1 < z.size(); ++s) {
    const double mid = 0.5 * (z[s] + z[s + 1]);
    const double half = 0.5 * (z[s + 1] - z[s]);
    const int span = space.find_span(mid);
    for (std::size_t q = 0; q < gx.size(); ++q) {
      const double x = mid + half * gx[q];
      const double w = half * gw[q];
      const double fx = f(x);
      const std::vector<double> vals = space.basis_on_span(span, x);
      for (int a = 0; a <= p; ++a) rhs[span - p - 1 + a] += w * fx * vals[a];
    }
  }
  return project_with_rhs(space, rhs);
}

Spline l2_project(const Spline& f, const KnotVector& space) {
  const int p = space.degree();
  const int n = space.dim();
  const int q = std::max(p, f.degree()) + 1;
  const auto [gx, gw] = gauss_legendre(q);
  const std::vector<double> z =
      merge_sorted_unique(distinct_breakpoints(space), distinct_breakpoints(f.space()));
  std::vector<double> rhs(n, 0.0);
  for (std::size_t s = 0; s + 1 < z.size(); ++s) {
    const double mid = 0.5 * (z[s] + z[s + 1]);
    const double half = 0.5 * (z[s + 1] - z[s]);
    const int span = space.find_span(mid);
    for (int i = 0; i < q; ++i) {
      const double x = mid + half * gx[i];
      const double w = half * gw[i];
      const double fx = f.eval(x);
      const std::vector<double> vals = space.basis_on_span(span, x);
      for (int a = 0; a <= p; ++a) rhs[span - p - 1 + a] += w * fx * vals[a];
    }
  }
  return project_with_rhs(space, rhs);
}

double l2_error(const RealFunction& f, const Spline& s, int points_per_span,
                const std::vector<double>& extra_breakpoints) {
  const auto [gx, gw] = gauss_legendre(points_per_span);
  const std::vector<double> z =
      merge_sorted_unique(distinct_breakpoints(s.space()), extra_breakpoints);
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < z.size(); ++k) {
    const double mid = 0.5 * (z[k] + z[k + 1]);
    const double half = 0.5 * (z[k + 1] - z[k]);
    for (int i = 0; i < points_per_span; ++i) {
      const double x = mid + half * gx[i];
      const double d = f(x) - s.eval(x);
      sum += half * gw[i] * d * d;
    }
  }
  return std::sqrt(sum);
}

namespace {

double quad_diff(const Spline& s1, const Spline& s2, int order) {
  const int q = std::max(s1.degree(), s2.degree()) + 1;
  const auto [gx, gw] = gauss_legendre(q);
  const std::vector<double> z =
      merge_sorted_unique(distinct_breakpoints(s1.space()), distinct_breakpoints(s2.space()));
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < z.size(); ++k) {
    const double mid = 0.5 * (z[k] + z[k + 1]);
    const double half = 0.5 * (z[k + 1] - z[k]);
    for (int i = 0; i < q; ++i) {
      const double x = mid + half * gx[i];
      double d;
      if (order == 0) {
        d = s1.eval(x) - s2.eval(x);
      } else {
        d = eval_spline_derivative(s1, x, 1, Side::right) -
            eval_spline_derivative(s2, x, 1, Side::right);
      }
      sum += half * gw[i] * d * d;
    }
  }
  return std::sqrt(sum);
}

}  // namespace

double l2_diff(const Spline& s1, const Spline& s2) { return quad_diff(s1, s2, 0); }

double h1_diff(const Spline& s1, const Spline& s2) {
  const double l2 = quad_diff(s1, s2, 0);
  const double semi = quad_diff(s1, s2, 1);
  return std::sqrt(l2 * l2 + semi * semi);
}

namespace {

KnotVector c0_space(const std::vector<double>& breakpoints, int p) {
  std::vector<double> ks;
  for (int i = 0; i <= p; ++i) ks.push_back(breakpoints.front());
  for (std::size_t j = 1; j + 1 < breakpoints.size(); ++j) {
    for (int i = 0; i < p; ++i) ks.push_back(breakpoints[j]);
  }
  for (int i = 0; i <= p; ++i) ks.push_back(breakpoints.back());
  return KnotVector(std::move(ks), p);
}

}  // namespace

std::vector<std::pair<KnotVector, Spline>> adaptive_refine(const RealFunction& f, int p, double a,
                                                           double b, int steps) {
  std::vector<std::pair<KnotVector, Spline>> out;
  std::vector<double> z{a, b};
  for (int step = 0; step <= steps; ++step) {
    KnotVector kv = c0_space(z, p);
    Spline s = l2_project(f, kv);
    out.emplace_back(kv, s);
    if (step == steps) break;

    // Per-span squared L2 errors; mark every span at >= half the maximum.
    const auto [gx, gw] = gauss_legendre(2 * (p + 1));
    std::vector<double> err(z.size() - 1, 0.0);
    for (std::size_t k = 0; k + 1 < z.size(); ++k) {
      const double mid = 0.5 * (z[k] + z[k + 1]);
      const double half = 0.5 * (z[k + 1] - z[k]);
      for (std::size_t i = 0; i < gx.size(); ++i) {
        const double x = mid + half * gx[i];
        const double d = f(x) - s.eval(x);
        err[k] += half * gw[i] * d * d;
      }
    }
    const double worst = *std::max_element(err.begin(), err.end());
    std::vector<double> refined;
    for (std::size_t k = 0; k + 1 < z.size(); ++k) {
      refined.push_back(z[k]);
      if (err[k] >= 0.5 * worst) refined.push_back(0.5 * (z[k] + z[k + 1]));
    }
    refined.push_back(z.back());
    z = std::move(refined);
  }
  return out;
}

HeatRun heat_solve(const RealFunction& u0, int p, int breakpoints, double dt, double t_end,
                   bool coarsen, double h1_tol) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  const double ratio = t_end / dt;
  const int nsteps = static_cast<int>(std::lround(ratio));
  if (std::abs(ratio - nsteps) > 1e-12) {
    throw std::invalid_argument("t_end must be a multiple of dt");
  }
  const double a = 0.0, b = 10.0;
  std::vector<double> ks;
  for (int i = 0; i < p; ++i) ks.push_back(a);
  for (int j = 0; j < breakpoints; ++j) {
    ks.push_back(a + (b - a) * j / (breakpoints - 1));
  }
  for (int i = 0; i < p; ++i) ks.push_back(b);
  KnotVector space(std::move(ks), p);

  HeatRun run;
  Spline s = l2_project(u0, space);
  run.snapshots.push_back(s);
  run.times.push_back(0.0);
  run.dofs.push_back(s.dim());
  for (int k = 0; k < nsteps; ++k) {
    if (coarsen) s = coarsen_h1(s, h1_tol).result();
    const KnotVector& sp = s.space();
    const BandedSymmetricMatrix M = assemble_mass(sp);
    BandedSymmetricMatrix A = assemble_stiffness(sp);
    for (int i = 0; i < A.size(); ++i) {
      for (int j = std::max(0, i - A.bandwidth()); j <= i; ++j) {
        A.at(i, j) = M.at(i, j) + dt * A.at(i, j);
      }
    }
    const std::vector<double> rhs = M.apply(s.control_points());
    s = Spline(sp, A.cholesky().solve(rhs));
    run.times.push_back((k + 1) * dt);
    run.dofs.push_back(s.dim());
  }
  run.snapshots.push_back(s);
  return run;
}

}  // namespace splc
