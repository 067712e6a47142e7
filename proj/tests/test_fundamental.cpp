#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "tdho/fundamental.hpp"

using namespace tdho;

namespace {
constexpr double kPi = 3.14159265358979323846;

FrequencyProfile random_smooth_profile(std::mt19937& rng) {
  // Quadratic Omega(t) bounded inside (0.1, 2.0) on [0,1]: far from the first
  // caustic (omega T < pi) and from the periodic degeneracy.
  std::uniform_real_distribution<double> c0(0.3, 1.5), c1(-0.4, 0.4),
      c2(-0.2, 0.2);
  return FrequencyProfile::polynomial({c0(rng), c1(rng), c2(rng)}, 0.0, 1.0);
}
}  // namespace

TEST_CASE("constant frequency reproduces the sine solutions") {
  auto pair = solve_fundamental(
      FrequencyProfile::constant(1.0, 0.0, kPi / 2.0), 512);
  for (double t : {0.0, 0.1, 0.33, kPi / 4.0, 1.0, kPi / 2.0}) {
    CHECK(pair.da_at(t) == doctest::Approx(std::sin(t)).epsilon(1e-9));
    CHECK(pair.db_at(t) ==
          doctest::Approx(std::sin(kPi / 2.0 - t)).epsilon(1e-9));
    CHECK(pair.da_dot_at(t) == doctest::Approx(std::cos(t)).epsilon(1e-9));
    CHECK(pair.db_dot_at(t) ==
          doctest::Approx(-std::cos(kPi / 2.0 - t)).epsilon(1e-9));
  }
  // Exact initial data.
  CHECK(pair.da()[0] == 0.0);
  CHECK(pair.da_dot()[0] == 1.0);
  CHECK(pair.db().back() == 0.0);
  CHECK(pair.db_dot().back() == -1.0);
}

TEST_CASE("free particle: Da(t_b) equals the duration") {
  auto pair = solve_fundamental(free_particle_profile(0.0, 2.5), 64);
  CHECK(pair.da_tb() == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(wronskian_residual(pair) < 1e-12);
}

TEST_CASE("wronskian constancy defect") {
  CHECK(wronskian_residual(solve_fundamental(
            FrequencyProfile::constant(1.0, 0.0, kPi / 2.0), 512)) < 1e-9);
  // Growing frequency: the drift stays at rounding level for both the run
  // under test and the refined reference run.
  auto profile = FrequencyProfile::polynomial({0.0, 1.0}, 0.0, 2.0);
  CHECK(wronskian_residual(solve_fundamental(profile, 1024)) < 1e-8);
  CHECK(wronskian_residual(solve_fundamental(profile, 8192)) < 1e-8);
}

TEST_CASE("derivative-sum identity residual") {
  auto constant = FrequencyProfile::constant(1.0, 0.0, 1.0);
  CHECK(derivative_sum_identity_residual(solve_fundamental(constant, 512),
                                         constant) < 1e-9);
  auto free = free_particle_profile(0.0, 1.0);
  CHECK(derivative_sum_identity_residual(solve_fundamental(free, 64), free) <
        1e-14);
  auto ramp = FrequencyProfile::polynomial({1.0, 0.5}, 0.0, 1.0);
  CHECK(derivative_sum_identity_residual(solve_fundamental(ramp, 2048), ramp) <
        1e-6);
}

TEST_CASE("Gelfand-Yaglom amplitude") {
  PhysicalParams params;
  std::complex<double> expected =
      std::sqrt(std::complex<double>(0.0, -1.0 / (2.0 * kPi)));
  auto free = solve_fundamental(free_particle_profile(0.0, 1.0), 64);
  auto amp = gelfand_yaglom_amplitude(free, params);
  CHECK(std::abs(amp - expected) < 1e-12);

  auto quarter = solve_fundamental(
      FrequencyProfile::constant(1.0, 0.0, kPi / 2.0), 512);
  CHECK(std::abs(gelfand_yaglom_amplitude(quarter, params) - expected) < 1e-9);

  auto caustic =
      solve_fundamental(FrequencyProfile::constant(1.0, 0.0, kPi), 512);
  CHECK_THROWS_AS(gelfand_yaglom_amplitude(caustic, params), CausticError);
}

TEST_CASE("coupling family members") {
  auto profile = FrequencyProfile::constant(1.0, 0.0, 1.0);
  auto base = solve_fundamental(profile, 256);
  auto unit = gflow_member(profile, 1.0, 256);
  CHECK(unit.pair.da_tb() == base.da_tb());
  auto zero = gflow_member(profile, 0.0, 256);
  CHECK(zero.pair.da_tb() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coupling-flow determinant relation") {
  CHECK(gflow_residual(FrequencyProfile::constant(1.0, 0.0, 1.0), 1.0, 1024) <
        1e-5);
  CHECK(gflow_residual(free_particle_profile(0.0, 1.0), 0.5, 256) < 1e-14);
  CHECK(gflow_residual(FrequencyProfile::polynomial({1.0, 1.0}, 0.0, 1.0), 0.5,
                       1024) < 1e-5);
  CHECK_THROWS_AS(
      gflow_residual(FrequencyProfile::constant(1.0, 0.0, 1.0), 0.0, 64),
      DomainError);
}

TEST_CASE("endpoint identity Da(t_b) = Db(t_a) over random smooth profiles") {
  std::mt19937 rng(777);
  for (int i = 0; i < 50; ++i) {
    auto pair = solve_fundamental(random_smooth_profile(rng), 256);
    double defect = std::abs(pair.da_tb() - pair.db_ta());
    CHECK(defect <= 1e-8 * std::max(1.0, std::abs(pair.da_tb())));
  }
}

TEST_CASE("fourth-order grid refinement") {
  auto profile = FrequencyProfile::polynomial({1.0, 0.5}, 0.0, 1.0);
  double reference = solve_fundamental(profile, 8192).da_tb();
  double e64 = std::abs(solve_fundamental(profile, 64).da_tb() - reference);
  double e128 = std::abs(solve_fundamental(profile, 128).da_tb() - reference);
  double e256 = std::abs(solve_fundamental(profile, 256).da_tb() - reference);
  CHECK(e64 / e128 >= 8.0);
  CHECK(e128 / e256 >= 8.0);
}

TEST_CASE("integrator preconditions and failures") {
  auto profile = FrequencyProfile::constant(1.0, 0.0, 1.0);
  CHECK_THROWS_AS(solve_fundamental(profile, 4), DomainError);
  // Omega^2 overflows to infinity away from t=0.
  auto blowup = FrequencyProfile::polynomial({0.0, 1e200}, 0.0, 1.0);
  CHECK_THROWS_AS(solve_fundamental(blowup, 64), Error);
}

TEST_CASE("inverted regime integrates to hyperbolic solutions") {
  auto inverted = FrequencyProfile::omega_squared_table({0.0, 1.0},
                                                        {-1.0, -1.0}, 0.0, 1.0);
  auto pair = solve_fundamental(inverted, 512);
  for (double t : {0.2, 0.5, 0.9}) {
    CHECK(pair.da_at(t) == doctest::Approx(std::sinh(t)).epsilon(1e-9));
    CHECK(pair.db_at(t) ==
          doctest::Approx(std::sinh(1.0 - t)).epsilon(1e-9));
  }
  CHECK(wronskian_residual(pair) < 1e-10);
}

TEST_CASE("interpolation stays 4th order between nodes") {
  auto profile = FrequencyProfile::constant(2.0, 0.0, 1.0);
  auto pair = solve_fundamental(profile, 128);
  double h = pair.step();
  double worst = 0.0;
  for (int i = 0; i < 128; ++i) {
    double t = pair.grid()[i] + 0.37 * h;
    worst = std::max(worst, std::abs(pair.da_at(t) - std::sin(2.0 * t) / 2.0));
  }
  CHECK(worst < 1e-9);
}
