#include "splc/removal.hpp"

#include <cmath>
#include <string>

namespace splc {
namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Least squares for the weighted lower-bidiagonal system
//   minimize || W (A_loc x - c) ||_2,
// with row weights W, via Givens rotations down the subdiagonal.
std::vector<double> bidiagonal_lsq(const RemovalContext& ctx, const std::vector<double>& weights,
                                   const std::vector<double>& c_loc) {
  const int L = ctx.L;
  // Row j of W*A_loc: diag[j] = w_j*alpha_j at column j (j <= L-1),
  // sub[j] = w_j*(1-alpha_j) at column j-1 (j >= 2).
  std::vector<double> diag(L - 1), sub(L - 1), sup(L - 1, 0.0), rhs(L);
  for (int j = 1; j <= L - 1; ++j) diag[j - 1] = weights[j - 1] * ctx.alpha[j - 1];
  for (int j = 2; j <= L; ++j) sub[j - 2] = weights[j - 1] * (1.0 - ctx.alpha[j - 1]);
  for (int j = 0; j < L; ++j) rhs[j] = weights[j] * c_loc[j];
  // Eliminate sub[j] against diag[j]; fill-in lands on sup[j] only.
  for (int j = 0; j < L - 1; ++j) {
    const double a = diag[j], b = sub[j];
    const double rho = std::hypot(a, b);
    const double cth = a / rho, sth = b / rho;
    diag[j] = rho;
    if (j + 1 < L - 1) {
      // next row's diagonal entry rotates into this row's superdiagonal
      const double t = diag[j + 1];
      sup[j] = sth * t;
      diag[j + 1] = cth * t;
    }
    const double r0 = rhs[j], r1 = rhs[j + 1];
    rhs[j] = cth * r0 + sth * r1;
    rhs[j + 1] = -sth * r0 + cth * r1;
  }
  std::vector<double> x(L - 1);
  for (int j = L - 2; j >= 0; --j) {
    double v = rhs[j];
    if (j + 1 < L - 1) v -= sup[j] * x[j + 1];
    x[j] = v / diag[j];
  }
  return x;
}

}  // namespace

RemovalContext build_removal_context(const KnotVector& kv, int j0) {
  const int N = kv.num_breakpoints();
  if (j0 < 2 || j0 > N - 1) {
    fail(errc::not_interior, "breakpoint index " + std::to_string(j0));
  }
  const int p = kv.degree();
  RemovalContext ctx;
  ctx.j0 = j0;
  ctx.i0 = kv.last_knot_index(j0);
  ctx.ell = kv.multiplicity(j0) - 1;
  ctx.L = p + 2 - ctx.ell;
  ctx.zeta = kv.breakpoint(j0);
  const int i0 = ctx.i0, ell = ctx.ell, L = ctx.L;
  const double zeta = ctx.zeta;

  ctx.alpha.resize(L);
  for (int j = 1; j <= L; ++j) {
    ctx.alpha[j - 1] =
        (kv.knot(i0) - kv.knot(i0 - p - 2 + j)) / (kv.knot(i0 - 1 + j) - kv.knot(i0 - p - 2 + j));
  }
  ctx.e.resize(L);
  for (int j = 1; j <= L; ++j) {
    const int i = i0 - p - 2 + j;
    ctx.e[j - 1] = std::sqrt((kv.knot(i + p + 1) - kv.knot(i)) / (p + 1));
  }
  ctx.mu.resize(L - 1);
  for (int j = 2; j <= L; ++j) {
    ctx.mu[j - 2] = (1.0 - ctx.alpha[j - 1]) / ctx.alpha[j - 2];
  }

  // gamma_loc with the squared last weight, pinned by ||E_loc^{-1} r||_2 = 1.
  const double eL = ctx.e[L - 1];
  double weighted_sum = 0.0, plain_sum = 0.0;
  for (int j = 1; j <= L - 1; ++j) {
    double prod = 1.0;
    for (int i = j; i <= L - 1; ++i) prod *= ctx.mu[i - 1] * ctx.mu[i - 1];
    weighted_sum += prod / (ctx.e[j - 1] * ctx.e[j - 1]);
    plain_sum += prod;
  }
  ctx.gamma = 1.0 / std::sqrt(1.0 + eL * eL * weighted_sum);
  ctx.gamma_tilde = 1.0 / std::sqrt(1.0 + plain_sum);

  auto backward = [&](double last) {
    std::vector<double> v(L);
    v[L - 1] = last;
    for (int j = L - 1; j >= 1; --j) v[j - 1] = -ctx.mu[j - 1] * v[j];
    return v;
  };
  ctx.r = backward(ctx.gamma * eL);
  ctx.r_tilde = backward(ctx.gamma_tilde);
  ctx.d = backward(1.0);

  ctx.z.resize(L);
  double pfact_over_lfact = 1.0;
  for (int k = ell + 1; k <= p; ++k) pfact_over_lfact *= k;
  for (int j = i0 - p - 1; j <= i0 - ell; ++j) {
    double prod = 1.0;
    for (int k = j; k <= j + p + 1; ++k) {
      if (kv.knot(k) != zeta) prod *= kv.knot(k) - zeta;
    }
    ctx.z[j - i0 + p + 1] = pfact_over_lfact * (kv.knot(j + p + 1) - kv.knot(j)) / prod;
  }

  double tail = 1.0;
  for (int k = i0 + 1; k <= i0 + p - ell; ++k) tail *= kv.knot(k) - zeta;
  ctx.c_loc_const = ctx.r[L - 1] * tail / pfact_over_lfact;
  return ctx;
}

std::vector<double> local_control_points(const Spline& s, const RemovalContext& ctx) {
  const int first = ctx.first_coef_index();
  std::vector<double> c(ctx.L);
  for (int j = 0; j < ctx.L; ++j) c[j] = s.coef(first + j);
  return c;
}

double error_xi(const Spline& s, const RemovalContext& ctx) {
  return std::abs(dot(ctx.r, local_control_points(s, ctx)));
}

double error_cp(const Spline& s, const RemovalContext& ctx) {
  return std::abs(dot(ctx.r_tilde, local_control_points(s, ctx)));
}

double indicator_D(const Spline& s, const RemovalContext& ctx) {
  return std::abs(dot(ctx.d, local_control_points(s, ctx)));
}

double jump_value(const Spline& s, const RemovalContext& ctx) {
  return dot(ctx.z, local_control_points(s, ctx));
}

double indicator(const Spline& s, const RemovalContext& ctx, IndicatorKind kind) {
  switch (kind) {
    case IndicatorKind::xi: return error_xi(s, ctx);
    case IndicatorKind::cp: return error_cp(s, ctx);
    case IndicatorKind::d: return indicator_D(s, ctx);
    case IndicatorKind::jump: return std::abs(jump_value(s, ctx));
    case IndicatorKind::linf: return best_local_linf(ctx, local_control_points(s, ctx)).second;
  }
  return 0.0;
}

std::vector<double> best_local_l2(const RemovalContext& ctx, const std::vector<double>& c_loc) {
  return bidiagonal_lsq(ctx, ctx.e, c_loc);
}

std::vector<double> best_local_cp(const RemovalContext& ctx, const std::vector<double>& c_loc) {
  return bidiagonal_lsq(ctx, std::vector<double>(ctx.L, 1.0), c_loc);
}

std::pair<std::vector<double>, double> best_local_linf(const RemovalContext& ctx,
                                                       const std::vector<double>& c_loc) {
  // Solve M x = c_loc with M = [A_loc | sgn], sgn_i = (-1)^{p-ell-i}.
  // Forward substitution with the last unknown kept symbolic:
  // x_j = base_j + slope_j * x_L.
  const int L = ctx.L;
  const int p_minus_ell = L - 2;
  std::vector<double> base(L - 1), slope(L - 1);
  auto sgn = [&](int i) { return ((p_minus_ell - i) % 2 == 0) ? 1.0 : -1.0; };
  for (int j = 1; j <= L - 1; ++j) {
    const double a = ctx.alpha[j - 1];
    if (a == 0.0) fail(errc::singular_local_system, "zero pivot in minimax solve");
    double b = c_loc[j - 1], m = -sgn(j);
    if (j >= 2) {
      const double sub = 1.0 - ctx.alpha[j - 1];
      b -= sub * base[j - 2];
      m -= sub * slope[j - 2];
    }
    base[j - 1] = b / a;
    slope[j - 1] = m / a;
  }
  // Last row: (1 - alpha_L) x_{L-1} + sgn(L) x_L = c_L, with alpha_L = 0.
  const double denom = slope[L - 2] + sgn(L);
  if (denom == 0.0) fail(errc::singular_local_system, "singular minimax system");
  const double xL = (c_loc[L - 1] - base[L - 2]) / denom;
  std::vector<double> x(L - 1);
  for (int j = 0; j < L - 1; ++j) x[j] = base[j] + slope[j] * xL;
  return {std::move(x), std::abs(xL)};
}

Spline assemble_removed(const Spline& s, const RemovalContext& ctx,
                        const std::vector<double>& new_c_loc) {
  const KnotVector coarse = s.space().erased(ctx.i0);
  const int n = s.dim();
  const int first = ctx.first_coef_index();
  std::vector<double> c(n - 1);
  for (int i = 1; i <= first - 1; ++i) c[i - 1] = s.coef(i);
  for (int j = 0; j < ctx.L - 1; ++j) c[first - 1 + j] = new_c_loc[j];
  for (int i = first + ctx.L - 1; i <= n - 1; ++i) c[i - 1] = s.coef(i + 1);
  return Spline(coarse, std::move(c));
}

std::pair<Spline, double> remove_knot(const Spline& s, int j0, RemovalNorm norm) {
  const RemovalContext ctx = build_removal_context(s.space(), j0);
  const std::vector<double> c_loc = local_control_points(s, ctx);
  std::vector<double> refit;
  double err = 0.0;
  switch (norm) {
    case RemovalNorm::xi:
      refit = best_local_l2(ctx, c_loc);
      err = error_xi(s, ctx);
      break;
    case RemovalNorm::cp:
      refit = best_local_cp(ctx, c_loc);
      err = error_cp(s, ctx);
      break;
    case RemovalNorm::linf: {
      auto [x, e] = best_local_linf(ctx, c_loc);
      refit = std::move(x);
      err = e;
      break;
    }
  }
  return {assemble_removed(s, ctx, refit), err};
}

}  // namespace splc
