#pragma once

#include <complex>
#include <vector>

#include "tdho/fundamental.hpp"
#include "tdho/greens.hpp"

namespace tdho {

/// weight * delta(t - t0).  Impulses placed exactly at t_a or t_b are read
/// with the inward-shifted limit: the Green-function branch is the one-sided
/// limit taken from inside the interval.
struct Impulse {
  double t = 0.0;
  double weight = 0.0;
};

/// Currents j(t) (position) and k(t) (momentum): smooth parts sampled on the
/// pair grid (empty vector == identically zero) plus weighted delta impulses.
struct CurrentPair {
  std::vector<double> smooth_j;
  std::vector<double> smooth_k;
  std::vector<Impulse> impulses_j;
  std::vector<Impulse> impulses_k;

  bool empty() const {
    return smooth_j.empty() && smooth_k.empty() && impulses_j.empty() &&
           impulses_k.empty();
  }
  void validate(const FundamentalPair& pair) const;
};

/// prefactor * exp(i action / hbar).
struct AmplitudeValue {
  std::complex<double> action;
  std::complex<double> prefactor;
  std::complex<double> value;
};

/// Classical action with position end points: boundary quadratic term,
/// linear current terms along the classical solution, and the four
/// current-current Green kernels.  Smooth double integrals use Simpson on
/// the shared grid, split at the Theta seam so the kink does not degrade the
/// 4th-order budget; delta impulses enter as exact point evaluations.
double classical_action_x(const FundamentalPair& pair, double x_a, double x_b,
                          const CurrentPair& currents,
                          const PhysicalParams& params);

/// Van Vleck-type amplitude in the position representation; the prefactor is
/// sqrt(-i M / (2 pi hbar D_a(t_b))), principal branch, current-independent.
AmplitudeValue amplitude_x(const FundamentalPair& pair, double x_a, double x_b,
                           const CurrentPair& currents,
                           const PhysicalParams& params);

/// Classical action with momentum end points (Legendre transform form).
double classical_action_p(const FundamentalPair& pair, double p_a, double p_b,
                          const CurrentPair& currents,
                          const PhysicalParams& params);

/// Momentum-representation amplitude; prefactor
/// sqrt(-2 pi i hbar D_a(t_b) / (M (1 + D'_a(t_b) D'_b(t_a)))).
AmplitudeValue amplitude_p(const FundamentalPair& pair, double p_a, double p_b,
                           const CurrentPair& currents,
                           const PhysicalParams& params);

/// | amplitude_x(x_a, x_b)[currents]
///   - amplitude_x(0, 0)[currents + k-impulses {(t_b, x_b), (t_a, -x_a)}] |.
double endpoint_shift_residual(const FundamentalPair& pair, double x_a,
                               double x_b, const CurrentPair& currents,
                               const PhysicalParams& params);

/// | amplitude_p(p_a, p_b)[currents]
///   - amplitude_p(0, 0)[currents + j-impulses {(t_a, p_a), (t_b, -p_b)}] |.
double momentum_shift_residual(const FundamentalPair& pair, double p_a,
                               double p_b, const CurrentPair& currents,
                               const PhysicalParams& params);

/// Closed-path generating functional Z[j,k]: prefactor
/// 1/sqrt(D'_a(t_b) - D'_b(t_a) - 2) (principal complex branch) and the
/// periodic Green kernels in the exponent.
AmplitudeValue partition_functional(const FundamentalPair& pair,
                                    const CurrentPair& currents,
                                    const PhysicalParams& params);

}  // namespace tdho
