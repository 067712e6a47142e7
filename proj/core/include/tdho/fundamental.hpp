#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "tdho/frequency.hpp"

namespace tdho {

/// The two fundamental solutions of the classical oscillator equation
///   (-d^2/dt^2 - Omega^2(t)) D = 0
/// with unit-slope data D_a(t_a)=0, D'_a(t_a)=1 and D_b(t_b)=0, D'_b(t_b)=-1,
/// sampled on a uniform grid together with their first derivatives.
///
/// Between nodes both the values and the derivatives are evaluated by cubic
/// Hermite interpolation; the derivative interpolant uses the exact node
/// curvature D'' = -Omega^2 D, so every evaluated quantity is 4th-order
/// accurate on refinement.  Immutable and shareable across threads.
class FundamentalPair {
 public:
  double t_a() const { return t_a_; }
  double t_b() const { return t_b_; }
  double step() const { return h_; }
  std::size_t n_steps() const { return grid_.size() - 1; }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& da() const { return da_; }
  const std::vector<double>& da_dot() const { return da_dot_; }
  const std::vector<double>& db() const { return db_; }
  const std::vector<double>& db_dot() const { return db_dot_; }
  const std::vector<double>& omega_sq() const { return omega_sq_; }

  double da_at(double t) const;
  double da_dot_at(double t) const;
  double db_at(double t) const;
  double db_dot_at(double t) const;

  /// D_a(t_b), the Gelfand-Yaglom scalar all Dirichlet channels divide by.
  double da_tb() const { return da_.back(); }
  double db_ta() const { return db_.front(); }
  double da_dot_tb() const { return da_dot_.back(); }
  double db_dot_ta() const { return db_dot_.front(); }

  /// Wronskian W = D_a D'_b - D'_a D_b evaluated at t_a (it is constant up
  /// to integrator error).
  double wronskian() const { return wronskian_; }
  double wronskian_at_node(std::size_t i) const;

  /// Caustic threshold: 1e-10 * (t_b - t_a), in absolute value of D_a(t_b).
  double caustic_tol() const { return 1e-10 * (t_b_ - t_a_); }

 private:
  friend FundamentalPair solve_fundamental(const FrequencyProfile&,
                                           std::size_t);
  std::size_t cell_of(double t) const;

  double t_a_ = 0.0, t_b_ = 1.0, h_ = 0.0;
  double wronskian_ = 0.0;
  std::vector<double> grid_, da_, da_dot_, db_, db_dot_, omega_sq_;
};

/// Integrates both fundamental solutions with the classical fixed-step RK4
/// scheme on a uniform grid of n_steps panels (n_steps >= 8).
FundamentalPair solve_fundamental(const FrequencyProfile& profile,
                                  std::size_t n_steps);

/// max_i |W(t_i) - W(t_a)|: the Wronskian-constancy defect of the pair.
double wronskian_residual(const FundamentalPair& pair);

/// | D'_b(t_a) + D'_a(t_b) + 2 int Omega Omega' D_a D_b dt |, the defect of
/// the integrated derivative-sum identity.  The integrand is formed from
/// d(Omega^2)/dt, so it is defined for inverted regimes as well.
double derivative_sum_identity_residual(const FundamentalPair& pair,
                                        const FrequencyProfile& profile);

/// sqrt(M / (2 pi i hbar D_a(t_b))), principal branch.  Throws CausticError
/// when |D_a(t_b)| is below the caustic threshold.
std::complex<double> gelfand_yaglom_amplitude(const FundamentalPair& pair,
                                              const PhysicalParams& params);

/// One member of the coupling family: the pair for Omega^2 -> g Omega^2.
struct GFlowFamily {
  double g = 1.0;
  FundamentalPair pair;
};

GFlowFamily gflow_member(const FrequencyProfile& profile, double g,
                         std::size_t n_steps);

/// Defect of the coupling-flow relation
///   d/dg ln D_a^g(t_b) = - int Omega^2(t) G^{x,g}_jj(t,t) dt,
/// with the g-derivative by a central difference (delta = 1e-4) and the
/// integral by Simpson on the pair grid.
double gflow_residual(const FrequencyProfile& profile, double g,
                      std::size_t n_steps);

}  // namespace tdho
