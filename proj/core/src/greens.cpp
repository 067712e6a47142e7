#include "tdho/greens.hpp"

#include <cmath>
#include <cstdlib>

#include "tdho/quadrature.hpp"

namespace tdho {

Channel parse_channel(const std::string& name) {
  if (name == "jj") return Channel::kJJ;
  if (name == "jk") return Channel::kJK;
  if (name == "kj") return Channel::kKJ;
  if (name == "kk") return Channel::kKK;
  throw DomainError("unknown channel: " + name);
}

std::string to_string(Channel ch) {
  switch (ch) {
    case Channel::kJJ: return "jj";
    case Channel::kJK: return "jk";
    case Channel::kKJ: return "kj";
    case Channel::kKK: return "kk";
  }
  return "?";
}

GreensEvaluator::Representation parse_representation(const std::string& name) {
  if (name == "dirichlet_x") return GreensEvaluator::Representation::kDirichletX;
  if (name == "momentum_p") return GreensEvaluator::Representation::kMomentumP;
  if (name == "periodic") return GreensEvaluator::Representation::kPeriodic;
  throw DomainError("unknown representation: " + name);
}

std::string to_string(GreensEvaluator::Representation rep) {
  switch (rep) {
    case GreensEvaluator::Representation::kDirichletX: return "dirichlet_x";
    case GreensEvaluator::Representation::kMomentumP: return "momentum_p";
    case GreensEvaluator::Representation::kPeriodic: return "periodic";
  }
  return "?";
}

GreensEvaluator::GreensEvaluator(FundamentalPair pair, Representation rep)
    : pair_(std::move(pair)), rep_(rep) {
  da_tb_ = pair_.da_tb();
  da_dot_tb_ = pair_.da_dot_tb();
  db_dot_ta_ = pair_.db_dot_ta();
  a_ = da_dot_tb_ - db_dot_ta_ - 2.0;
  m_denom_ = 1.0 + da_dot_tb_ * db_dot_ta_;

  const double tol = pair_.caustic_tol();
  if (std::abs(da_tb_) <= tol)
    throw CausticError("D_a(t_b) vanishes (caustic)", da_tb_);
  if (rep_ == Representation::kMomentumP && std::abs(m_denom_) <= tol)
    throw CausticError("momentum-representation denominator vanishes", m_denom_);
  if (rep_ == Representation::kPeriodic && std::abs(a_) <= tol)
    throw CausticError("periodic denominator a(t_a,t_b) vanishes", a_);
}

void GreensEvaluator::check_times(double t, double t2) const {
  if (!(t >= pair_.t_a() && t <= pair_.t_b() && t2 >= pair_.t_a() &&
        t2 <= pair_.t_b()))
    throw DomainError("green: time outside [t_a, t_b]");
}

double GreensEvaluator::u_at(double t) const {
  return pair_.da_at(t) + pair_.db_at(t) * da_dot_tb_;
}
double GreensEvaluator::u_dot_at(double t) const {
  return pair_.da_dot_at(t) + pair_.db_dot_at(t) * da_dot_tb_;
}
double GreensEvaluator::w_at(double t) const {
  return pair_.da_at(t) * db_dot_ta_ - pair_.db_at(t);
}
double GreensEvaluator::w_dot_at(double t) const {
  return pair_.da_dot_at(t) * db_dot_ta_ - pair_.db_dot_at(t);
}
double GreensEvaluator::g_at(double t) const {
  return pair_.da_at(t) + pair_.db_at(t);
}
double GreensEvaluator::g_dot_at(double t) const {
  return pair_.da_dot_at(t) + pair_.db_dot_at(t);
}

double GreensEvaluator::dirichlet_branch(Channel ch, double t, double t2,
                                         int side) const {
  if (side == 0) {
    if (t != t2)
      side = (t > t2) ? 1 : -1;
    else if (ch == Channel::kJK || ch == Channel::kKJ)
      return 0.5 * (dirichlet_branch(ch, t, t2, 1) +
                    dirichlet_branch(ch, t, t2, -1));
    else
      side = 1;  // jj/kk branches coincide on the diagonal
  }
  // "above" branch: t later than t2 -> left factor D_b-type at t.
  double num;
  switch (ch) {
    case Channel::kJJ:
      num = (side > 0) ? pair_.db_at(t) * pair_.da_at(t2)
                       : pair_.da_at(t) * pair_.db_at(t2);
      break;
    case Channel::kJK:
      num = (side > 0) ? pair_.db_at(t) * pair_.da_dot_at(t2)
                       : pair_.da_at(t) * pair_.db_dot_at(t2);
      break;
    case Channel::kKJ:
      return dirichlet_branch(Channel::kJK, t2, t, -side);
    case Channel::kKK:
      num = (side > 0) ? pair_.db_dot_at(t) * pair_.da_dot_at(t2)
                       : pair_.da_dot_at(t) * pair_.db_dot_at(t2);
      break;
    default:
      throw DomainError("bad channel");
  }
  return num / da_tb_;
}

double GreensEvaluator::momentum_branch(Channel ch, double t, double t2,
                                        int side) const {
  if (side == 0) {
    if (t != t2)
      side = (t > t2) ? 1 : -1;
    else if (ch == Channel::kJK || ch == Channel::kKJ)
      return 0.5 *
             (momentum_branch(ch, t, t2, 1) + momentum_branch(ch, t, t2, -1));
    else
      side = 1;
  }
  double num;
  switch (ch) {
    case Channel::kJJ:
      num = (side > 0) ? u_at(t) * w_at(t2) : w_at(t) * u_at(t2);
      break;
    case Channel::kJK:
      num = (side > 0) ? u_at(t) * w_dot_at(t2) : w_at(t) * u_dot_at(t2);
      break;
    case Channel::kKJ:
      return momentum_branch(Channel::kJK, t2, t, -side);
    case Channel::kKK:
      num = (side > 0) ? u_dot_at(t) * w_dot_at(t2) : w_dot_at(t) * u_dot_at(t2);
      break;
    default:
      throw DomainError("bad channel");
  }
  return num / (da_tb_ * m_denom_);
}

double GreensEvaluator::green(Channel ch, double t, double t2) const {
  check_times(t, t2);
  switch (rep_) {
    case Representation::kDirichletX:
      return dirichlet_branch(ch, t, t2, 0);
    case Representation::kMomentumP:
      return momentum_branch(ch, t, t2, 0);
    case Representation::kPeriodic: {
      double base = dirichlet_branch(ch, t, t2, 0);
      double left = (ch == Channel::kJJ || ch == Channel::kJK) ? g_at(t)
                                                               : g_dot_at(t);
      double right = (ch == Channel::kJJ || ch == Channel::kKJ) ? g_at(t2)
                                                                : g_dot_at(t2);
      return base + left * right / (a_ * da_tb_);
    }
  }
  throw DomainError("bad representation");
}

double jump_residual(const GreensEvaluator& e, double t2) {
  if (e.representation() != GreensEvaluator::Representation::kDirichletX)
    throw DomainError("jump_residual is a Dirichlet-representation check");
  const FundamentalPair& p = e.pair();
  if (!(t2 > p.t_a() && t2 < p.t_b()))
    throw DomainError("jump_residual: t2 must be interior");
  // One-sided limits of d/dt G_jj(t,t2):
  //   above: D'_b(t) D_a(t2) / D_a(t_b),  below: D'_a(t) D_b(t2) / D_a(t_b).
  double above = p.db_dot_at(t2) * p.da_at(t2) / e.da_tb();
  double below = p.da_dot_at(t2) * p.db_at(t2) / e.da_tb();
  return std::abs(above - below + 1.0);
}

ClassicalPath::ClassicalPath(FundamentalPair pair, double alpha, double beta,
                             double mass)
    : pair_(std::move(pair)), alpha_(alpha), beta_(beta), mass_(mass) {}

double ClassicalPath::x(double t) const {
  return alpha_ * pair_.da_at(t) + beta_ * pair_.db_at(t);
}
double ClassicalPath::p(double t) const {
  return mass_ * (alpha_ * pair_.da_dot_at(t) + beta_ * pair_.db_dot_at(t));
}
double ClassicalPath::x_at_node(std::size_t i) const {
  return alpha_ * pair_.da()[i] + beta_ * pair_.db()[i];
}
double ClassicalPath::p_at_node(std::size_t i) const {
  return mass_ * (alpha_ * pair_.da_dot()[i] + beta_ * pair_.db_dot()[i]);
}

ClassicalPath classical_path_x(const FundamentalPair& pair, double x_a,
                               double x_b, const PhysicalParams& params) {
  params.validate();
  double tol = pair.caustic_tol();
  if (std::abs(pair.da_tb()) <= tol || std::abs(pair.db_ta()) <= tol)
    throw CausticError("classical_path_x at a caustic", pair.da_tb());
  // Normalizing the D_b part by D_b(t_a) rather than D_a(t_b) keeps the end
  // values exact; the two denominators agree up to the Eq.-(22) defect.
  return ClassicalPath(pair, x_b / pair.da_tb(), x_a / pair.db_ta(),
                       params.mass);
}

ClassicalPath classical_path_p(const FundamentalPair& pair, double p_a,
                               double p_b, const PhysicalParams& params) {
  params.validate();
  double m_denom = 1.0 + pair.da_dot_tb() * pair.db_dot_ta();
  if (std::abs(m_denom) <= pair.caustic_tol())
    throw CausticError("classical_path_p: degenerate momentum denominator",
                       m_denom);
  double alpha = (p_a + p_b * pair.db_dot_ta()) / (params.mass * m_denom);
  double beta = (p_a * pair.da_dot_tb() - p_b) / (params.mass * m_denom);
  return ClassicalPath(pair, alpha, beta, params.mass);
}

ClassicalPath zero_path(const FundamentalPair& pair,
                        const PhysicalParams& params) {
  return ClassicalPath(pair, 0.0, 0.0, params.mass);
}

double inhomogeneous_shift(const GreensEvaluator& e,
                           const std::vector<double>& smooth_j, double t,
                           const PhysicalParams& params) {
  params.validate();
  if (e.representation() != GreensEvaluator::Representation::kDirichletX)
    throw DomainError("inhomogeneous_shift uses the dirichlet_x kernel");
  const FundamentalPair& p = e.pair();
  const std::size_t n = p.grid().size();
  if (smooth_j.size() != n)
    throw DomainError("inhomogeneous_shift: current not sampled on the grid");
  std::vector<double> fa(n), fb(n);
  for (std::size_t i = 0; i < n; ++i) {
    fa[i] = p.da()[i] * smooth_j[i];
    fb[i] = p.db()[i] * smooth_j[i];
  }
  std::vector<double> pa = prefix_integral_uniform(fa, p.step());
  std::vector<double> pb = prefix_integral_uniform(fb, p.step());
  const double qb_total = pb.back();
  // int G(t,t') j(t') dt' = [D_b(t) P(t) + D_a(t) Q(t)] / D_a(t_b) with
  // P(t) = int_{t_a}^t D_a j and Q(t) = int_t^{t_b} D_b j.  Values and exact
  // derivatives at the nodes feed a cubic Hermite for off-node t.
  std::size_t i = 0;
  if (t >= p.grid()[n - 2])
    i = n - 2;
  else
    i = static_cast<std::size_t>((t - p.t_a()) / p.step());
  while (i > 0 && t < p.grid()[i]) --i;
  while (i + 2 < n && t >= p.grid()[i + 1]) ++i;
  auto value_at = [&](std::size_t k) {
    return p.db()[k] * pa[k] + p.da()[k] * (qb_total - pb[k]);
  };
  auto slope_at = [&](std::size_t k) {
    // The j-terms cancel: d/dt [D_b P + D_a Q] = D'_b P + D'_a Q.
    return p.db_dot()[k] * pa[k] + p.da_dot()[k] * (qb_total - pb[k]);
  };
  double h = p.step();
  double s = (t - p.grid()[i]) / h;
  double s2 = s * s, s3 = s2 * s;
  double val = (2 * s3 - 3 * s2 + 1) * value_at(i) +
               (s3 - 2 * s2 + s) * h * slope_at(i) +
               (-2 * s3 + 3 * s2) * value_at(i + 1) +
               (s3 - s2) * h * slope_at(i + 1);
  return -val / (params.mass * e.da_tb());
}

}  // namespace tdho
