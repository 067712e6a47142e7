#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "tdho/functional.hpp"

using namespace tdho;

namespace {

constexpr double kPi = 3.14159265358979323846;
using Complex = std::complex<double>;

std::vector<double> sampled(const FundamentalPair& pair,
                            double (*f)(double)) {
  std::vector<double> out(pair.grid().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(pair.grid()[i]);
  return out;
}

// Degree-(n-1) Richardson extrapolation to eps = 0 (Lagrange at zero).
Complex extrapolate_to_zero(const std::vector<double>& eps,
                            const std::vector<Complex>& values) {
  Complex total = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    double weight = 1.0;
    for (std::size_t j = 0; j < eps.size(); ++j)
      if (j != i) weight *= -eps[j] / (eps[i] - eps[j]);
    total += weight * values[i];
  }
  return total;
}

}  // namespace

TEST_CASE("classical action closed forms, constant frequency") {
  PhysicalParams params;
  auto pair = solve_fundamental(FrequencyProfile::constant(1.0, 0.0, 1.0), 1024);
  CurrentPair none;
  CHECK(classical_action_x(pair, 0.0, 0.0, none, params) == 0.0);
  double x_a = 0.3, x_b = -0.2;
  double expected = 0.5 *
                    ((x_a * x_a + x_b * x_b) * std::cos(1.0) -
                     2.0 * x_a * x_b) /
                    std::sin(1.0);
  CHECK(classical_action_x(pair, x_a, x_b, none, params) ==
        doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("double-integral term for a unit position current") {
  // omega = 1, T = pi/2, x_a = x_b = 0, j == 1:
  //   A = -(1/2) int int G_jj = -(2 - pi/2)/2 = pi/4 - 1.
  PhysicalParams params;
  auto pair = solve_fundamental(
      FrequencyProfile::constant(1.0, 0.0, kPi / 2.0), 2048);
  CurrentPair c;
  c.smooth_j.assign(pair.grid().size(), 1.0);
  CHECK(classical_action_x(pair, 0.0, 0.0, c, params) ==
        doctest::Approx(kPi / 4.0 - 1.0).epsilon(1e-8));
}

TEST_CASE("amplitude closed forms") {
  PhysicalParams params;
  CurrentPair none;
  SUBCASE("free particle") {
    auto pair = solve_fundamental(free_particle_profile(0.0, 1.0), 64);
    auto amp = amplitude_x(pair, 0.5, 2.0, none, params);
    Complex pref = std::sqrt(Complex(0.0, -1.0 / (2.0 * kPi)));
    Complex expected = pref * std::exp(Complex(0.0, 0.5 * 1.5 * 1.5));
    CHECK(std::abs(amp.value - expected) < 1e-12);
    CHECK(std::abs(amp.prefactor) ==
          doctest::Approx(std::abs(amp.value)).epsilon(1e-14));
  }
  SUBCASE("constant frequency prefactor") {
    auto pair =
        solve_fundamental(FrequencyProfile::constant(1.0, 0.0, 1.0), 512);
    auto amp = amplitude_x(pair, 0.0, 0.0, none, params);
    Complex expected = std::sqrt(Complex(0.0, -1.0 / (2.0 * kPi * std::sin(1.0))));
    CHECK(std::abs(amp.prefactor - expected) < 1e-10);
    CHECK(amp.action == Complex(0.0));
  }
  SUBCASE("momentum-representation prefactor") {
    auto pair =
        solve_fundamental(FrequencyProfile::constant(1.0, 0.0, 1.0), 512);
    auto amp = amplitude_p(pair, 0.0, 0.0, none, params);
    Complex expected =
        std::sqrt(Complex(0.0, -2.0 * kPi * std::sin(1.0))) / std::sin(1.0);
    CHECK(std::abs(amp.value - expected) < 1e-9);
  }
}

TEST_CASE("momentum amplitude equals the Fourier transform of the position one") {
  // 2D Fresnel quadrature with a Gaussian regulator, Richardson-extrapolated
  // in the regulator strength.
  PhysicalParams params;
  CurrentPair none;
  const double big_t = 2.0;
  auto pair =
      solve_fundamental(FrequencyProfile::constant(1.0, 0.0, big_t), 512);
  const double p_a = 0.3, p_b = -0.4;
  Complex direct = amplitude_p(pair, p_a, p_b, none, params).value;

  const std::vector<double> eps{0.32, 0.16, 0.08, 0.04, 0.02};
  const double half_width = 43.0;
  const int n = 9600;  // ~10 points per oscillation at the domain edge
  const double dx = 2.0 * half_width / n;
  auto simpson_weight = [&](int i) {
    if (i == 0 || i == n) return 1.0;
    return (i % 2 == 1) ? 4.0 : 2.0;
  };
  std::vector<Complex> sums(eps.size(), 0.0);
  for (int ia = 0; ia <= n; ++ia) {
    double x_a = -half_width + ia * dx;
    double wa = simpson_weight(ia);
    std::vector<Complex> row(eps.size(), 0.0);
    for (int ib = 0; ib <= n; ++ib) {
      double x_b = -half_width + ib * dx;
      Complex amp = amplitude_x(pair, x_a, x_b, none, params).value;
      Complex kernel =
          amp * std::exp(Complex(0.0, -(p_b * x_b - p_a * x_a))) *
          simpson_weight(ib);
      double w = std::exp(-0.02 * (x_a * x_a + x_b * x_b));
      double w2 = w * w, w4 = w2 * w2, w8 = w4 * w4;
      row[4] += kernel * w;
      row[3] += kernel * w2;
      row[2] += kernel * w4;
      row[1] += kernel * w8;
      row[0] += kernel * (w8 * w8);
    }
    for (std::size_t k = 0; k < eps.size(); ++k) sums[k] += wa * row[k];
  }
  for (auto& s : sums) s *= dx * dx / 9.0;
  Complex transform = extrapolate_to_zero(eps, sums);
  CHECK(std::abs(transform - direct) < 1e-3);
}

TEST_CASE("momentum amplitude with currents matches the transform oracle") {
  // The action is exactly quadratic in the end values, so six genuine
  // amplitude evaluations determine it everywhere; the reconstruction is
  // spot-checked before feeding the Fresnel quadrature.
  PhysicalParams params;
  const double big_t = 2.0;
  auto pair =
      solve_fundamental(FrequencyProfile::constant(1.0, 0.0, big_t), 1024);
  CurrentPair cur;
  cur.smooth_j.resize(pair.grid().size());
  cur.smooth_k.resize(pair.grid().size());
  for (std::size_t i = 0; i < pair.grid().size(); ++i) {
    double t = pair.grid()[i];
    cur.smooth_j[i] = 0.3 + 0.2 * std::sin(t);
    cur.smooth_k[i] = 0.1 * t;
  }
  auto a_of = [&](double xa, double xb) {
    return classical_action_x(pair, xa, xb, cur, params);
  };
  double q = a_of(0, 0);
  double ca = (a_of(1, 0) - a_of(-1, 0)) / 2;
  double alpha = (a_of(1, 0) + a_of(-1, 0)) / 2 - q;
  double cb = (a_of(0, 1) - a_of(0, -1)) / 2;
  double beta = (a_of(0, 1) + a_of(0, -1)) / 2 - q;
  double gamma = a_of(1, 1) - alpha - beta - ca - cb - q;
  auto a_recon = [&](double xa, double xb) {
    return alpha * xa * xa + beta * xb * xb + gamma * xa * xb + ca * xa +
           cb * xb + q;
  };
  for (auto [xa, xb] : {std::pair{0.7, -1.3}, {-2.1, 0.4}, {5.0, 3.0}})
    REQUIRE(std::abs(a_recon(xa, xb) - a_of(xa, xb)) < 1e-9);
  Complex pref = amplitude_x(pair, 0.0, 0.0, cur, params).prefactor;

  const double p_a = 0.25, p_b = -0.15;
  Complex direct = amplitude_p(pair, p_a, p_b, cur, params).value;

  const std::vector<double> eps{0.32, 0.16, 0.08, 0.04, 0.02};
  const double half_width = 43.0;
  const int n = 9600;
  const double dx = 2.0 * half_width / n;
  auto simpson_weight = [&](int i) {
    if (i == 0 || i == n) return 1.0;
    return (i % 2 == 1) ? 4.0 : 2.0;
  };
  std::vector<Complex> sums(eps.size(), 0.0);
  for (int ia = 0; ia <= n; ++ia) {
    double x_a = -half_width + ia * dx;
    double wa = simpson_weight(ia);
    std::vector<Complex> row(eps.size(), 0.0);
    for (int ib = 0; ib <= n; ++ib) {
      double x_b = -half_width + ib * dx;
      Complex kernel =
          pref *
          std::exp(Complex(0.0, a_recon(x_a, x_b) -
                                    (p_b * x_b - p_a * x_a))) *
          simpson_weight(ib);
      double w = std::exp(-0.02 * (x_a * x_a + x_b * x_b));
      double w2 = w * w, w4 = w2 * w2, w8 = w4 * w4;
      row[4] += kernel * w;
      row[3] += kernel * w2;
      row[2] += kernel * w4;
      row[1] += kernel * w8;
      row[0] += kernel * (w8 * w8);
    }
    for (std::size_t k = 0; k < eps.size(); ++k) sums[k] += wa * row[k];
  }
  for (auto& s : sums) s *= dx * dx / 9.0;
  Complex transform = extrapolate_to_zero(eps, sums);
  CHECK(std::abs(transform - direct) < 1e-3);
}

TEST_CASE("Legendre-transform consistency of the two actions") {
  PhysicalParams params;
  CurrentPair none;
  auto pair = solve_fundamental(FrequencyProfile::constant(1.0, 0.0, 1.0), 1024);
  double p_a = 0.4, p_b = -0.7;
  // Stationary end positions: p_b = dA/dx_b, p_a = -dA/dx_a (2x2 linear).
  double da = pair.da_tb(), dda = pair.da_dot_tb(), ddb = pair.db_dot_ta();
  // A = [dda x_b^2 - ddb x_a^2 - 2 x_a x_b] / (2 da), M = 1.
  // dA/dx_b = (dda x_b - x_a)/da, -dA/dx_a = (ddb x_a + x_b)/da.
  double det = dda * ddb + 1.0;
  double x_b = (p_b * ddb + p_a) * da / det;
  double x_a = (p_a * dda - p_b) * da / det;
  double delta = 1e-5;
  CurrentPair c;
  auto a_x = [&](double xa, double xb) {
    return classical_action_x(pair, xa, xb, c, params);
  };
  double fd_pb = (a_x(x_a, x_b + delta) - a_x(x_a, x_b - delta)) / (2 * delta);
  double fd_pa = -(a_x(x_a + delta, x_b) - a_x(x_a - delta, x_b)) / (2 * delta);
  CHECK(std::abs(fd_pb - p_b) < 1e-6);
  CHECK(std::abs(fd_pa - p_a) < 1e-6);
  double legendre =
      a_x(x_a, x_b) - p_b * x_b + p_a * x_a;
  CHECK(classical_action_p(pair, p_a, p_b, none, params) ==
        doctest::Approx(legendre).epsilon(1e-9));
}

TEST_CASE("end-point reduction identities") {
  PhysicalParams params;
  SUBCASE("trivial zero shift") {
    auto pair =
        solve_fundamental(FrequencyProfile::constant(1.0, 0.0, 1.0), 512);
    CHECK(endpoint_shift_residual(pair, 0.0, 0.0, CurrentPair{}, params) ==
          0.0);
    CHECK(momentum_shift_residual(pair, 0.0, 0.0, CurrentPair{}, params) ==
          0.0);
  }
  SUBCASE("constant frequency, closed-form sides") {
    auto pair =
        solve_fundamental(FrequencyProfile::constant(1.0, 0.0, 1.0), 1024);
    CHECK(endpoint_shift_residual(pair, 0.3, -0.2, CurrentPair{}, params) <
          1e-8);
    CHECK(momentum_shift_residual(pair, 0.5, 0.1, CurrentPair{}, params) <
          1e-8);
  }
  SUBCASE("free particle with a smooth position current") {
    auto pair = solve_fundamental(free_particle_profile(0.0, 1.0), 2048);
    CurrentPair c;
    c.smooth_j = sampled(pair, [](double t) { return t; });
    CHECK(endpoint_shift_residual(pair, 1.0, 2.0, c, params) < 1e-6);
  }
  SUBCASE("momentum identity with a smooth momentum current") {
    auto pair =
        solve_fundamental(FrequencyProfile::constant(2.0, 0.0, 0.7), 2048);
    CurrentPair c;
    c.smooth_k = sampled(pair, [](double t) { return std::sin(t); });
    CHECK(momentum_shift_residual(pair, 0.5, 0.1, c, params) < 1e-6);
  }
}

TEST_CASE("closed-path functional") {
  PhysicalParams params;
  SUBCASE("constant frequency prefactor, principal branch") {
    auto pair =
        solve_fundamental(FrequencyProfile::constant(1.0, 0.0, 1.0), 512);
    auto z = partition_functional(pair, CurrentPair{}, params);
    Complex expected = 1.0 / std::sqrt(Complex(2.0 * std::cos(1.0) - 2.0, 0.0));
    CHECK(std::abs(z.value - expected) < 1e-9);
  }
  SUBCASE("free-particle limit diverges") {
    auto pair = solve_fundamental(free_particle_profile(0.0, 1.0), 64);
    CHECK_THROWS_AS(partition_functional(pair, CurrentPair{}, params),
                    CausticError);
  }
}

TEST_CASE("velocity current reduces to an effective coordinate current") {
  // amplitude(k, j) = amplitude(0, j - M dk/dt)
  //                   * exp{ i M/hbar [x_b k_b - x_a k_a + (1/2) int k^2] }.
  PhysicalParams params;
  auto pair = solve_fundamental(
      FrequencyProfile::polynomial({1.0, 0.2}, 0.0, 1.0), 2048);
  const auto& grid = pair.grid();
  double x_a = 0.4, x_b = -0.1;
  CurrentPair with_k;
  with_k.smooth_j = sampled(pair, [](double t) { return 0.3 + 0.5 * t; });
  with_k.smooth_k = sampled(pair, [](double t) { return std::sin(t); });
  Complex lhs = amplitude_x(pair, x_a, x_b, with_k, params).value;

  CurrentPair effective;
  effective.smooth_j = with_k.smooth_j;
  const double h = pair.step();
  std::vector<double> k_dot(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i == 0)
      k_dot[i] = (-3.0 * with_k.smooth_k[0] + 4.0 * with_k.smooth_k[1] -
                  with_k.smooth_k[2]) /
                 (2.0 * h);
    else if (i + 1 == grid.size())
      k_dot[i] = (3.0 * with_k.smooth_k[i] - 4.0 * with_k.smooth_k[i - 1] +
                  with_k.smooth_k[i - 2]) /
                 (2.0 * h);
    else
      k_dot[i] = (with_k.smooth_k[i + 1] - with_k.smooth_k[i - 1]) / (2.0 * h);
    effective.smooth_j[i] -= params.mass * k_dot[i];
  }
  std::vector<double> k_sq(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    k_sq[i] = with_k.smooth_k[i] * with_k.smooth_k[i];
  double int_k_sq = 0.0;
  for (std::size_t i = 0; i + 2 < grid.size(); i += 2)
    int_k_sq += h / 3.0 * (k_sq[i] + 4.0 * k_sq[i + 1] + k_sq[i + 2]);
  double phase = params.mass / params.hbar *
                 (x_b * with_k.smooth_k.back() - x_a * with_k.smooth_k.front() +
                  0.5 * int_k_sq);
  Complex rhs = amplitude_x(pair, x_a, x_b, effective, params).value *
                std::exp(Complex(0.0, phase));
  CHECK(std::abs(lhs - rhs) < 1e-6);
}

TEST_CASE("action is exactly quadratic in currents and end values") {
  PhysicalParams params;
  auto pair = solve_fundamental(
      FrequencyProfile::polynomial({0.9, -0.2, 0.3}, 0.0, 1.0), 512);
  CurrentPair base;
  base.smooth_j = sampled(pair, [](double t) { return std::cos(2.0 * t); });
  base.smooth_k = sampled(pair, [](double t) { return t * t - 0.4; });
  base.impulses_j = {{0.31, 0.7}};
  base.impulses_k = {{0.62, -0.4}};
  auto action_at = [&](double lambda) {
    CurrentPair scaled = base;
    for (double& v : scaled.smooth_j) v *= lambda;
    for (double& v : scaled.smooth_k) v *= lambda;
    for (auto& imp : scaled.impulses_j) imp.weight = 0.7 * lambda;
    for (auto& imp : scaled.impulses_k) imp.weight = -0.4 * lambda;
    return classical_action_x(pair, 0.4 * lambda, -0.8 * lambda, scaled,
                              params);
  };
  // Third central differences of a quadratic vanish identically.
  for (double lambda : {0.0, 0.5, 1.3}) {
    double third = action_at(lambda + 1.5) - 3.0 * action_at(lambda + 0.5) +
                   3.0 * action_at(lambda - 0.5) - action_at(lambda - 1.5);
    CHECK(std::abs(third) < 1e-10);
  }
}

TEST_CASE("log-amplitude derivatives reproduce the contraction dictionary") {
  PhysicalParams params{1.3, 0.7};  // non-unit M and hbar
  auto pair = solve_fundamental(
      FrequencyProfile::polynomial({1.0, 0.25}, 0.0, 1.0), 1024);
  GreensEvaluator ev(pair, GreensEvaluator::Representation::kDirichletX);
  double t1 = 0.3, t2 = 0.8, delta = 1e-3;
  auto mixed_log_derivative = [&](bool j_first, bool j_second) {
    auto amp = [&](double w1, double w2) {
      CurrentPair c;
      if (j_first) c.impulses_j.push_back({t1, w1});
      else c.impulses_k.push_back({t1, w1});
      if (j_second) c.impulses_j.push_back({t2, w2});
      else c.impulses_k.push_back({t2, w2});
      return amplitude_x(pair, 0.2, -0.5, c, params).value;
    };
    Complex r1 = amp(delta, delta) / amp(delta, -delta);
    Complex r2 = amp(-delta, delta) / amp(-delta, -delta);
    return (std::log(r1) - std::log(r2)) / (4.0 * delta * delta);
  };
  const Complex scale(0.0, -1.0);  // d^2 ln = -(i/hbar) * (dictionary/hbar)
  Complex jj = mixed_log_derivative(true, true);
  CHECK(std::abs(jj - scale * ev.green(Channel::kJJ, t1, t2) /
                          (params.hbar * params.mass)) < 1e-5);
  Complex jk = mixed_log_derivative(true, false);
  CHECK(std::abs(jk - scale * ev.green(Channel::kJK, t1, t2) / params.hbar) <
        1e-5);
  Complex kk = mixed_log_derivative(false, false);
  CHECK(std::abs(kk - scale * params.mass * ev.green(Channel::kKK, t1, t2) /
                          params.hbar) < 1e-5);
}
