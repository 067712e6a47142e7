// Coupling-flow determinant relation: lives with `fundamental` in the API but
// needs the diagonal Green function, hence a separate translation unit.

#include <cmath>

#include "tdho/fundamental.hpp"
#include "tdho/greens.hpp"
#include "tdho/quadrature.hpp"

namespace tdho {

double gflow_residual(const FrequencyProfile& profile, double g,
                      std::size_t n_steps) {
  constexpr double kDelta = 1e-4;
  if (!(g > 0.0 && g <= 1.0))
    throw DomainError("gflow_residual requires g in (0, 1]");
  if (g - kDelta < 0.0)
    throw DomainError("gflow_residual: g too small for the central difference");

  FundamentalPair minus = solve_fundamental(profile.coupling_scaled(g - kDelta),
                                            n_steps);
  FundamentalPair centre = solve_fundamental(profile.coupling_scaled(g),
                                             n_steps);
  FundamentalPair plus = solve_fundamental(profile.coupling_scaled(g + kDelta),
                                           n_steps);

  const double tol = centre.caustic_tol();
  for (const FundamentalPair* p : {&minus, &centre, &plus})
    if (std::abs(p->da_tb()) <= tol)
      throw CausticError("gflow_residual: caustic inside the difference stencil",
                         p->da_tb());
  double ratio = plus.da_tb() / minus.da_tb();
  if (!(ratio > 0.0))
    throw CausticError("gflow_residual: D_a(t_b) changes sign across g",
                       ratio);
  double dln_da = std::log(ratio) / (2.0 * kDelta);

  // int Omega^2(t) G^{x,g}_jj(t,t) dt on the pair grid; the diagonal of the
  // jj kernel is D_a D_b / D_a(t_b), continuous across the seam.
  const auto& grid = centre.grid();
  std::vector<double> diag(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double w2 = profile.omega_squared(grid[i]);
    diag[i] = w2 * centre.da()[i] * centre.db()[i] / centre.da_tb();
  }
  double integral = integrate_uniform(diag, centre.step());

  return std::abs(dln_da + integral);
}

}  // namespace tdho
