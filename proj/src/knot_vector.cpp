#include "splc/knot_vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace splc {

const char* errc_name(errc code) {
  switch (code) {
    case errc::not_sorted: return "NotSorted";
    case errc::too_short: return "TooShort";
    case errc::not_basic: return "NotBasic";
    case errc::multiplicity_exceeded: return "MultiplicityExceeded";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::outside_domain: return "OutsideDomain";
    case errc::order_too_high: return "OrderTooHigh";
    case errc::degree_zero: return "DegreeZero";
    case errc::not_open: return "NotOpen";
    case errc::not_continuous: return "NotContinuous";
    case errc::not_interior: return "NotInterior";
    case errc::singular_local_system: return "SingularLocalSystem";
    case errc::stale_cache: return "StaleCache";
    case errc::budget_too_large: return "BudgetTooLarge";
    case errc::duplicate_abscissa: return "DuplicateAbscissa";
    case errc::solver_failure: return "SolverFailure";
  }
  return "UnknownError";
}

KnotVector::KnotVector(std::vector<double> knots, int degree)
    : degree_(degree), knots_(std::move(knots)) {
  if (degree_ < 0) fail(errc::index_out_of_range, "degree must be nonnegative");
  const int p = degree_;
  const int n = static_cast<int>(knots_.size()) - (p + 1);
  if (n < p + 1) {
    fail(errc::too_short, "need at least 2(p+1) knots, got " + std::to_string(knots_.size()));
  }
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    if (!(knots_[i] <= knots_[i + 1])) {
      if (std::isnan(knots_[i]) || std::isnan(knots_[i + 1])) {
        fail(errc::not_sorted, "knots must be finite");
      }
      fail(errc::not_sorted, "knots must be nondecreasing at position " + std::to_string(i + 1));
    }
  }
  // Basic: xi_{p+1} is the first breakpoint and xi_{n+1} the last, so knots
  // p+2..n belong to interior breakpoints strictly between them.
  if (!(knots_[p] < knots_[p + 1])) {
    fail(errc::not_basic, "xi_{p+1} must be the first breakpoint (xi_{p+2} > xi_{p+1})");
  }
  if (!(knots_[n - 1] < knots_[n])) {
    fail(errc::not_basic, "xi_{n+1} must be the last breakpoint (xi_n < xi_{n+1})");
  }

  breakpoints_.push_back(knots_[p]);
  multiplicities_.push_back(0);  // boundary multiplicity is not used
  last_index_.push_back(p + 1);
  int i = p + 1;  // 0-based position of the first interior candidate
  while (i < n) {
    const double z = knots_[i];
    int m = 0;
    while (i < n && knots_[i] == z) {
      ++m;
      ++i;
    }
    if (m > p + 1) {
      fail(errc::multiplicity_exceeded,
           "interior breakpoint " + std::to_string(z) + " has multiplicity " + std::to_string(m) +
               " > p+1");
    }
    breakpoints_.push_back(z);
    multiplicities_.push_back(m);
    last_index_.push_back(i);  // 1-based index of the last occurrence
  }
  breakpoints_.push_back(knots_[n]);
  multiplicities_.push_back(0);
  last_index_.push_back(n + 1);

  open_ = knots_[0] == knots_[p] && knots_[n] == knots_[n + p];
}

std::vector<double> KnotVector::greville() const {
  const int p = degree_;
  if (p < 1) fail(errc::degree_zero, "Greville abscissas need degree >= 1");
  const int n = dim();
  std::vector<double> g(n);
  for (int i = 1; i <= n; ++i) {
    double sum = 0.0;
    for (int k = i + 1; k <= i + p; ++k) sum += knot(k);
    g[i - 1] = sum / p;
  }
  return g;
}

std::vector<double> KnotVector::xi_weights() const {
  const int p = degree_;
  const int n = dim();
  std::vector<double> w(n);
  for (int i = 1; i <= n; ++i) {
    w[i - 1] = std::sqrt((knot(i + p + 1) - knot(i)) / (p + 1));
  }
  return w;
}

int KnotVector::find_span(double x, Side side) const {
  const int p = degree_;
  const int n = dim();
  int k;
  if (side == Side::right) {
    // number of knots <= x
    k = static_cast<int>(std::upper_bound(knots_.begin(), knots_.end(), x) - knots_.begin());
  } else {
    // number of knots < x
    k = static_cast<int>(std::lower_bound(knots_.begin(), knots_.end(), x) - knots_.begin());
  }
  return std::clamp(k, p + 1, n);
}

std::vector<double> KnotVector::basis_on_span(int span, double x) const {
  const int p = degree_;
  std::vector<double> N(p + 1, 0.0), left(p + 1), right(p + 1);
  N[0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = x - knot(span + 1 - j);
    right[j] = knot(span + j) - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double temp = N[r] / (right[r + 1] + left[j - r]);
      N[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    N[j] = saved;
  }
  return N;
}

std::vector<std::vector<double>> KnotVector::basis_derivatives_on_span(int span, double x,
                                                                       int order) const {
  const int p = degree_;
  const int d = std::min(order, p);
  std::vector<std::vector<double>> ndu(p + 1, std::vector<double>(p + 1));
  std::vector<double> left(p + 1), right(p + 1);
  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = x - knot(span + 1 - j);
    right[j] = knot(span + j) - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu[j][r] = right[r + 1] + left[j - r];
      const double temp = ndu[r][j - 1] / ndu[j][r];
      ndu[r][j] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu[j][j] = saved;
  }
  std::vector<std::vector<double>> ders(order + 1, std::vector<double>(p + 1, 0.0));
  for (int j = 0; j <= p; ++j) ders[0][j] = ndu[j][p];
  std::vector<std::vector<double>> a(2, std::vector<double>(p + 1));
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a[0][0] = 1.0;
    for (int k = 1; k <= d; ++k) {
      double dv = 0.0;
      const int rk = r - k, pk = p - k;
      if (r >= k) {
        a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
        dv = a[s2][0] * ndu[rk][pk];
      }
      const int j1 = rk >= -1 ? 1 : -rk;
      const int j2 = r - 1 <= pk ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
        dv += a[s2][j] * ndu[rk + j][pk];
      }
      if (r <= pk) {
        a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
        dv += a[s2][k] * ndu[r][pk];
      }
      ders[k][r] = dv;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= d; ++k) {
    for (int j = 0; j <= p; ++j) ders[k][j] *= factor;
    factor *= (p - k);
  }
  return ders;
}

KnotVector KnotVector::inserted(double x) const {
  std::vector<double> ks = knots_;
  ks.insert(std::upper_bound(ks.begin(), ks.end(), x), x);
  return KnotVector(std::move(ks), degree_);
}

KnotVector KnotVector::erased(int i) const {
  std::vector<double> ks = knots_;
  ks.erase(ks.begin() + (i - 1));
  return KnotVector(std::move(ks), degree_);
}

double eval_basis(const KnotVector& kv, int i, double x) {
  if (i < 1 || i > kv.dim()) {
    fail(errc::index_out_of_range, "basis index " + std::to_string(i));
  }
  if (x < kv.a() || x > kv.b()) {
    fail(errc::outside_domain, "x = " + std::to_string(x));
  }
  const int span = kv.find_span(x);
  const int p = kv.degree();
  if (i < span - p || i > span) return 0.0;
  return kv.basis_on_span(span, x)[i - (span - p)];
}

}  // namespace splc
