#include "tdho/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace tdho {

namespace {

// Pivot ratios r_i = d_i / d_{i-1} of the determinant recurrence
// d_i = diag_i d_{i-1} - off^2 d_{i-2}.  Breakdown (a near-zero pivot) is the
// discrete caustic.
std::vector<double> pivot_ratios(const LatticeOperator& opr) {
  std::vector<double> r(opr.n);
  const double off_sq = opr.offdiag.empty()
                            ? 0.0
                            : opr.offdiag.front() * opr.offdiag.front();
  const double scale = 2.0 / (opr.h * opr.h);
  double prev = 1.0;
  for (int i = 0; i < opr.n; ++i) {
    double ri = opr.diag[i] - (i > 0 ? off_sq / prev : 0.0);
    if (std::abs(ri) <= 1e-12 * scale)
      throw LatticeError("singular lattice operator (discrete caustic)");
    r[i] = ri;
    prev = ri;
  }
  return r;
}

}  // namespace

LatticeOperator make_lattice_operator(const FrequencyProfile& profile, int n) {
  if (n < 2) throw DomainError("lattice operator needs N >= 2 interior nodes");
  LatticeOperator opr;
  opr.n = n;
  opr.t_a = profile.t_a();
  opr.h = (profile.t_b() - profile.t_a()) / (n + 1);
  opr.diag.resize(n);
  opr.offdiag.assign(n - 1, -1.0 / (opr.h * opr.h));
  for (int i = 0; i < n; ++i)
    opr.diag[i] = 2.0 / (opr.h * opr.h) - profile.omega_squared(opr.node_time(i));
  return opr;
}

std::vector<double> lattice_green_column(const LatticeOperator& opr, int j) {
  if (j < 0 || j >= opr.n) throw DomainError("lattice column index out of range");
  const int n = opr.n;
  const double off = opr.offdiag.empty() ? 0.0 : opr.offdiag.front();
  std::vector<double> r = pivot_ratios(opr);  // also validates regularity
  // Thomas elimination of K u = e_j / h: the unit impulse carries the 1/h
  // mass of the discrete delta, so u_i approximates G(t_i, t_j) directly.
  std::vector<double> rhs(n, 0.0);
  rhs[j] = 1.0 / opr.h;
  for (int i = 1; i < n; ++i) rhs[i] -= off / r[i - 1] * rhs[i - 1];
  std::vector<double> u(n);
  u[n - 1] = rhs[n - 1] / r[n - 1];
  for (int i = n - 2; i >= 0; --i) u[i] = (rhs[i] - off * u[i + 1]) / r[i];
  return u;
}

double lattice_green(const LatticeOperator& opr, int i, int j) {
  if (i < 0 || i >= opr.n) throw DomainError("lattice row index out of range");
  return lattice_green_column(opr, j)[i];
}

double lattice_log_det_ratio(const LatticeOperator& opr1,
                             const LatticeOperator& opr2) {
  if (opr1.n != opr2.n || opr1.h != opr2.h)
    throw DomainError("lattice_log_det_ratio: operators on different grids");
  std::vector<double> r1 = pivot_ratios(opr1);
  std::vector<double> r2 = pivot_ratios(opr2);
  double log_ratio = 0.0;
  int sign = 1;
  for (int i = 0; i < opr1.n; ++i) {
    log_ratio += std::log(std::abs(r1[i])) - std::log(std::abs(r2[i]));
    if (r1[i] < 0.0) sign = -sign;
    if (r2[i] < 0.0) sign = -sign;
  }
  if (sign < 0)
    throw LatticeError("lattice_log_det_ratio: determinant ratio is negative");
  return log_ratio;
}

double lattice_scaled_determinant(const LatticeOperator& opr) {
  std::vector<double> r = pivot_ratios(opr);
  double log_mag = std::log(opr.h);
  int sign = 1;
  for (double ri : r) {
    log_mag += std::log(std::abs(ri) * opr.h * opr.h);
    if (ri < 0.0) sign = -sign;
  }
  return sign * std::exp(log_mag);
}

double lattice_gaussian_moments(const LatticeOperator& opr,
                                const std::vector<int>& indices,
                                double scale) {
  if (indices.size() > 12)
    throw DomainError("lattice moments: order above the supported cap");
  for (double ri : pivot_ratios(opr))
    if (ri <= 0.0)
      throw LatticeError("lattice moments require a positive definite operator");
  if (indices.empty()) return 1.0;
  if (indices.size() % 2 == 1) return 0.0;

  std::map<int, std::vector<double>> columns;
  for (int j : indices)
    if (!columns.count(j)) columns[j] = lattice_green_column(opr, j);
  auto cov = [&](int a, int b) { return scale * columns[b][a]; };

  const int n = static_cast<int>(indices.size());
  std::vector<bool> used(n, false);
  double total = 0.0;
  double partial = 1.0;
  auto recurse = [&](auto&& self) -> void {
    int first = -1;
    for (int i = 0; i < n; ++i)
      if (!used[i]) {
        first = i;
        break;
      }
    if (first < 0) {
      total += partial;
      return;
    }
    used[first] = true;
    for (int j = first + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = true;
      double saved = partial;
      partial *= cov(indices[first], indices[j]);
      self(self);
      partial = saved;
      used[j] = false;
    }
    used[first] = false;
  };
  recurse(recurse);
  return total;
}

}  // namespace tdho
