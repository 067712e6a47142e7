#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tdho {

/// Integral of uniformly sampled values with step h (composite Simpson; a
/// 3/8 tail absorbs an odd panel count).  4th-order for smooth integrands.
double integrate_uniform(std::span<const double> values, double h);

/// Running integral P_i = int_{t_0}^{t_i} f dt on a uniform grid, 4th-order
/// at every node (Simpson pairs, 3/8 closes for odd prefixes).
std::vector<double> prefix_integral_uniform(std::span<const double> values,
                                            double h);

/// Gauss-Hermite rule for weight exp(-x^2): nodes and weights, computed by
/// Golub-Welsch.  Deterministic for a given order.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussHermiteRule gauss_hermite(int order);

}  // namespace tdho
