#include "tdho/fundamental.hpp"

#include <algorithm>
#include <cmath>

#include "tdho/quadrature.hpp"

namespace tdho {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct State {
  double d;
  double v;
};

// RK4 stage derivative for D'' = -Omega^2(t) D.
inline State rhs(const State& y, double omega_sq) {
  return {y.v, -omega_sq * y.d};
}

double omega_sq_checked(const FrequencyProfile& profile, double t) {
  double w2 = profile.omega_squared(t);
  if (!std::isfinite(w2))
    throw IntegrationError("non-finite omega^2 during integration", t);
  return w2;
}

State rk4_step(const FrequencyProfile& profile, const State& y, double t,
               double h) {
  const double w2_0 = omega_sq_checked(profile, t);
  const double w2_m = omega_sq_checked(profile, t + 0.5 * h);
  const double w2_1 = omega_sq_checked(profile, t + h);
  State k1 = rhs(y, w2_0);
  State k2 = rhs({y.d + 0.5 * h * k1.d, y.v + 0.5 * h * k1.v}, w2_m);
  State k3 = rhs({y.d + 0.5 * h * k2.d, y.v + 0.5 * h * k2.v}, w2_m);
  State k4 = rhs({y.d + h * k3.d, y.v + h * k3.v}, w2_1);
  return {y.d + h / 6.0 * (k1.d + 2.0 * k2.d + 2.0 * k3.d + k4.d),
          y.v + h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v)};
}

// Cubic Hermite on [t0, t0+h] given endpoint values and derivatives.
inline double hermite(double t0, double h, double f0, double g0, double f1,
                      double g1, double t) {
  double s = (t - t0) / h;
  double s2 = s * s;
  double s3 = s2 * s;
  return (2.0 * s3 - 3.0 * s2 + 1.0) * f0 + (s3 - 2.0 * s2 + s) * h * g0 +
         (-2.0 * s3 + 3.0 * s2) * f1 + (s3 - s2) * h * g1;
}

}  // namespace

std::size_t FundamentalPair::cell_of(double t) const {
  if (!(t >= t_a_ && t <= t_b_))
    throw DomainError("evaluation time outside [t_a, t_b]");
  if (t >= grid_[grid_.size() - 2]) return grid_.size() - 2;
  auto idx = static_cast<std::size_t>((t - t_a_) / h_);
  if (idx >= grid_.size() - 1) idx = grid_.size() - 2;
  // Guard against rounding in the division.
  while (idx > 0 && t < grid_[idx]) --idx;
  while (idx + 2 < grid_.size() && t >= grid_[idx + 1]) ++idx;
  return idx;
}

double FundamentalPair::da_at(double t) const {
  // Exact node values at the ends keep the Dirichlet boundary rows exact.
  if (t == t_a_) return da_.front();
  if (t == t_b_) return da_.back();
  std::size_t i = cell_of(t);
  return hermite(grid_[i], h_, da_[i], da_dot_[i], da_[i + 1], da_dot_[i + 1],
                 t);
}

double FundamentalPair::db_at(double t) const {
  if (t == t_a_) return db_.front();
  if (t == t_b_) return db_.back();
  std::size_t i = cell_of(t);
  return hermite(grid_[i], h_, db_[i], db_dot_[i], db_[i + 1], db_dot_[i + 1],
                 t);
}

double FundamentalPair::da_dot_at(double t) const {
  if (t == t_a_) return da_dot_.front();
  if (t == t_b_) return da_dot_.back();
  std::size_t i = cell_of(t);
  // Node curvature is exact: D'' = -Omega^2 D.
  return hermite(grid_[i], h_, da_dot_[i], -omega_sq_[i] * da_[i],
                 da_dot_[i + 1], -omega_sq_[i + 1] * da_[i + 1], t);
}

double FundamentalPair::db_dot_at(double t) const {
  if (t == t_a_) return db_dot_.front();
  if (t == t_b_) return db_dot_.back();
  std::size_t i = cell_of(t);
  return hermite(grid_[i], h_, db_dot_[i], -omega_sq_[i] * db_[i],
                 db_dot_[i + 1], -omega_sq_[i + 1] * db_[i + 1], t);
}

double FundamentalPair::wronskian_at_node(std::size_t i) const {
  return da_[i] * db_dot_[i] - da_dot_[i] * db_[i];
}

FundamentalPair solve_fundamental(const FrequencyProfile& profile,
                                  std::size_t n_steps) {
  if (n_steps < 8) throw DomainError("solve_fundamental requires n_steps >= 8");
  FundamentalPair pair;
  pair.t_a_ = profile.t_a();
  pair.t_b_ = profile.t_b();
  const std::size_t n = n_steps;
  const double h = (pair.t_b_ - pair.t_a_) / static_cast<double>(n);
  pair.h_ = h;
  pair.grid_.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    pair.grid_[i] = pair.t_a_ + static_cast<double>(i) * h;
  pair.grid_[n] = pair.t_b_;

  pair.omega_sq_.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    pair.omega_sq_[i] = omega_sq_checked(profile, pair.grid_[i]);

  pair.da_.assign(n + 1, 0.0);
  pair.da_dot_.assign(n + 1, 0.0);
  pair.db_.assign(n + 1, 0.0);
  pair.db_dot_.assign(n + 1, 0.0);

  State ya{0.0, 1.0};
  pair.da_[0] = ya.d;
  pair.da_dot_[0] = ya.v;
  for (std::size_t i = 0; i < n; ++i) {
    ya = rk4_step(profile, ya, pair.grid_[i], h);
    pair.da_[i + 1] = ya.d;
    pair.da_dot_[i + 1] = ya.v;
  }

  State yb{0.0, -1.0};
  pair.db_[n] = yb.d;
  pair.db_dot_[n] = yb.v;
  for (std::size_t i = n; i-- > 0;) {
    yb = rk4_step(profile, yb, pair.grid_[i + 1], -h);
    pair.db_[i] = yb.d;
    pair.db_dot_[i] = yb.v;
  }

  pair.wronskian_ = pair.wronskian_at_node(0);
  return pair;
}

double wronskian_residual(const FundamentalPair& pair) {
  double w0 = pair.wronskian();
  double worst = 0.0;
  for (std::size_t i = 0; i < pair.grid().size(); ++i)
    worst = std::max(worst, std::abs(pair.wronskian_at_node(i) - w0));
  return worst;
}

double derivative_sum_identity_residual(const FundamentalPair& pair,
                                        const FrequencyProfile& profile) {
  const auto& grid = pair.grid();
  std::vector<double> integrand(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double t = grid[i];
    // Interior one-sided convention for the slope at the ends.
    double tt = std::min(std::max(t, pair.t_a() + 1e-12 * pair.step()),
                         pair.t_b() - 1e-12 * pair.step());
    double dsq = profile.omega_squared_derivative(tt);  // = 2 Omega Omega'
    integrand[i] = dsq * pair.da()[i] * pair.db()[i];
  }
  double integral = integrate_uniform(integrand, pair.step());
  return std::abs(pair.db_dot_ta() + pair.da_dot_tb() + integral);
}

std::complex<double> gelfand_yaglom_amplitude(const FundamentalPair& pair,
                                              const PhysicalParams& params) {
  params.validate();
  double da_tb = pair.da_tb();
  if (std::abs(da_tb) <= pair.caustic_tol())
    throw CausticError("gelfand_yaglom_amplitude at a caustic", da_tb);
  std::complex<double> denom(0.0, 2.0 * kPi * params.hbar * da_tb);
  return std::sqrt(params.mass / denom);
}

GFlowFamily gflow_member(const FrequencyProfile& profile, double g,
                         std::size_t n_steps) {
  return GFlowFamily{g, solve_fundamental(profile.coupling_scaled(g), n_steps)};
}

}  // namespace tdho
