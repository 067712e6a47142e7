#pragma once

#include <vector>

#include "tdho/frequency.hpp"
#include "tdho/fundamental.hpp"

namespace tdho {

/// Which pair of currents a Green-function kernel couples.
enum class Channel { kJJ, kJK, kKJ, kKK };

Channel parse_channel(const std::string& name);
std::string to_string(Channel ch);

/// Evaluator for the Green-function channels built from a FundamentalPair.
///
/// Values are real and carry no factors of i, hbar or M; consumers apply the
/// contraction dictionary.  Equal-time convention: Theta(0) = 1/2, i.e. the
/// jk/kj channels return the average of their one-sided limits (jj and kk are
/// continuous across the diagonal, so only jk/kj are affected).
///
/// Immutable; concurrent evaluation is permitted.
class GreensEvaluator {
 public:
  enum class Representation { kDirichletX, kMomentumP, kPeriodic };

  GreensEvaluator(FundamentalPair pair, Representation rep);

  Representation representation() const { return rep_; }
  const FundamentalPair& pair() const { return pair_; }

  double green(Channel ch, double t, double t2) const;

  // Cached scalars of the denominators.
  double da_tb() const { return da_tb_; }
  double da_dot_tb() const { return da_dot_tb_; }
  double db_dot_ta() const { return db_dot_ta_; }
  /// a(t_a,t_b) = D'_a(t_b) - D'_b(t_a) - 2 (periodic denominator).
  double periodic_a() const { return a_; }
  /// 1 + D'_a(t_b) D'_b(t_a) (momentum-representation denominator).
  double momentum_denom() const { return m_denom_; }

  /// Dirichlet channel with an explicit branch choice (-1: t below t2 limit,
  /// +1: above, 0: Theta(0)=1/2 average).  Used for the one-sided limits the
  /// boundary-impulse prescription needs.
  double dirichlet_branch(Channel ch, double t, double t2, int side) const;
  double momentum_branch(Channel ch, double t, double t2, int side) const;

 private:
  void check_times(double t, double t2) const;
  // Momentum representation left/right solutions u = D_a + D_b D'_a(t_b),
  // w = D_a D'_b(t_a) - D_b and their derivatives.
  double u_at(double t) const;
  double u_dot_at(double t) const;
  double w_at(double t) const;
  double w_dot_at(double t) const;
  // Periodic rank-one function g = D_a + D_b.
  double g_at(double t) const;
  double g_dot_at(double t) const;

  FundamentalPair pair_;
  Representation rep_;
  double da_tb_, da_dot_tb_, db_dot_ta_, a_, m_denom_;
};

GreensEvaluator::Representation parse_representation(const std::string& name);
std::string to_string(GreensEvaluator::Representation rep);

/// Convenience free function mirroring the evaluator method.
inline double green(const GreensEvaluator& e, Channel ch, double t,
                    double t2) {
  return e.green(ch, t, t2);
}

/// Defect of the unit derivative jump of the Dirichlet jj kernel across
/// t = t2, computed from the one-sided Wronski-form limits (the analytic jump
/// is W(t2)/D_a(t_b), so the defect is the local Wronskian drift plus the
/// D_a(t_b)=D_b(t_a) identity defect).
double jump_residual(const GreensEvaluator& e, double t2);

/// Classical solution x(t) = alpha D_a(t) + beta D_b(t), p = M x'.
/// End values are reproduced exactly: the D_a term vanishes at t_a and the
/// D_b term at t_b by construction of the initial data.
class ClassicalPath {
 public:
  ClassicalPath(FundamentalPair pair, double alpha, double beta, double mass);

  double x(double t) const;
  double p(double t) const;
  double x_at_node(std::size_t i) const;
  double p_at_node(std::size_t i) const;
  const FundamentalPair& pair() const { return pair_; }

 private:
  FundamentalPair pair_;
  double alpha_, beta_, mass_;
};

/// Position-endpoint classical path.
ClassicalPath classical_path_x(const FundamentalPair& pair, double x_a,
                               double x_b, const PhysicalParams& params);

/// Momentum-endpoint classical path.
ClassicalPath classical_path_p(const FundamentalPair& pair, double p_a,
                               double p_b, const PhysicalParams& params);

/// Trivial all-zero path on the pair grid.
ClassicalPath zero_path(const FundamentalPair& pair,
                        const PhysicalParams& params);

/// Displacement produced by a smooth position current j sampled on the pair
/// grid:  dx(t) = -(1/M) int G_jj(t,t') j(t') dt'  (Simpson on the grid,
/// split at the Theta seam).
double inhomogeneous_shift(const GreensEvaluator& e,
                           const std::vector<double>& smooth_j, double t,
                           const PhysicalParams& params);

}  // namespace tdho
