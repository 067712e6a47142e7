#include "tdho/functional.hpp"

#include <cmath>
#include <functional>

#include "tdho/quadrature.hpp"

namespace tdho {

namespace {

constexpr double kPi = 3.14159265358979323846;

enum class Rep { kX, kP, kPeriodic };

// One Theta-structured kernel
//   K(t,t') = [Theta(t-t') la(t) ra(t') + Theta(t'-t) lb(t) rb(t')] / den,
// optionally plus a separable rank-one part r1l(t) r1r(t') * r1_scale.
struct Kernel {
  std::function<double(double)> la, ra, lb, rb;
  std::vector<double> la_n, ra_n, lb_n, rb_n;  // node samples
  double den = 1.0;
  bool has_rank_one = false;
  std::function<double(double)> r1l, r1r;
  std::vector<double> r1l_n, r1r_n;
  double r1_scale = 0.0;
};

std::vector<double> sample(const std::function<double(double)>& f,
                           const std::vector<double>& grid) {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = f(grid[i]);
  return out;
}

Kernel make_kernel(const FundamentalPair& pair, Rep rep, Channel ch) {
  Kernel k;
  auto da = [&pair](double t) { return pair.da_at(t); };
  auto dad = [&pair](double t) { return pair.da_dot_at(t); };
  auto db = [&pair](double t) { return pair.db_at(t); };
  auto dbd = [&pair](double t) { return pair.db_dot_at(t); };

  if (rep == Rep::kX || rep == Rep::kPeriodic) {
    k.den = pair.da_tb();
    switch (ch) {
      case Channel::kJJ: k.la = db; k.ra = da; k.lb = da; k.rb = db; break;
      case Channel::kJK: k.la = db; k.ra = dad; k.lb = da; k.rb = dbd; break;
      case Channel::kKJ: k.la = dbd; k.ra = da; k.lb = dad; k.rb = db; break;
      case Channel::kKK: k.la = dbd; k.ra = dad; k.lb = dad; k.rb = dbd; break;
    }
    if (rep == Rep::kPeriodic) {
      double a = pair.da_dot_tb() - pair.db_dot_ta() - 2.0;
      auto g = [&pair](double t) { return pair.da_at(t) + pair.db_at(t); };
      auto gd = [&pair](double t) {
        return pair.da_dot_at(t) + pair.db_dot_at(t);
      };
      k.has_rank_one = true;
      if (ch == Channel::kJJ || ch == Channel::kJK) k.r1l = g; else k.r1l = gd;
      if (ch == Channel::kJJ || ch == Channel::kKJ) k.r1r = g; else k.r1r = gd;
      k.r1_scale = 1.0 / (a * pair.da_tb());
      k.r1l_n = sample(k.r1l, pair.grid());
      k.r1r_n = sample(k.r1r, pair.grid());
    }
  } else {
    double da_dot_tb = pair.da_dot_tb();
    double db_dot_ta = pair.db_dot_ta();
    auto u = [&pair, da_dot_tb](double t) {
      return pair.da_at(t) + pair.db_at(t) * da_dot_tb;
    };
    auto ud = [&pair, da_dot_tb](double t) {
      return pair.da_dot_at(t) + pair.db_dot_at(t) * da_dot_tb;
    };
    auto w = [&pair, db_dot_ta](double t) {
      return pair.da_at(t) * db_dot_ta - pair.db_at(t);
    };
    auto wd = [&pair, db_dot_ta](double t) {
      return pair.da_dot_at(t) * db_dot_ta - pair.db_dot_at(t);
    };
    k.den = pair.da_tb() * (1.0 + da_dot_tb * db_dot_ta);
    switch (ch) {
      case Channel::kJJ: k.la = u; k.ra = w; k.lb = w; k.rb = u; break;
      case Channel::kJK: k.la = u; k.ra = wd; k.lb = w; k.rb = ud; break;
      case Channel::kKJ: k.la = ud; k.ra = w; k.lb = wd; k.rb = u; break;
      case Channel::kKK: k.la = ud; k.ra = wd; k.lb = wd; k.rb = ud; break;
    }
  }
  k.la_n = sample(k.la, pair.grid());
  k.ra_n = sample(k.ra, pair.grid());
  k.lb_n = sample(k.lb, pair.grid());
  k.rb_n = sample(k.rb, pair.grid());
  return k;
}

// Pointwise kernel value with an explicit order side: +1 for t later than
// t', -1 for earlier, 0 for the Theta(0)=1/2 convention.
double kernel_point(const Kernel& k, double t, double t2, int side) {
  double theta_part;
  if (side > 0)
    theta_part = k.la(t) * k.ra(t2) / k.den;
  else if (side < 0)
    theta_part = k.lb(t) * k.rb(t2) / k.den;
  else
    theta_part = 0.5 * (k.la(t) * k.ra(t2) + k.lb(t) * k.rb(t2)) / k.den;
  if (k.has_rank_one) theta_part += k.r1_scale * k.r1l(t) * k.r1r(t2);
  return theta_part;
}

int order_side(double t, double t2) {
  if (t > t2) return 1;
  if (t < t2) return -1;
  return 0;
}

// Double integral  int int K(t,t') c1(t) c2(t') dt dt'  with both currents
// smooth on the grid.  The Theta structure turns it into prefix/suffix
// integrals, keeping everything 4th-order despite the seam.
double smooth_smooth(const Kernel& k, const std::vector<double>& c1,
                     const std::vector<double>& c2, double h) {
  const std::size_t n = c1.size();
  std::vector<double> fa(n), fb(n);
  for (std::size_t i = 0; i < n; ++i) {
    fa[i] = k.ra_n[i] * c2[i];
    fb[i] = k.rb_n[i] * c2[i];
  }
  std::vector<double> pref_a = prefix_integral_uniform(fa, h);
  std::vector<double> pref_b = prefix_integral_uniform(fb, h);
  const double total_b = pref_b.back();
  std::vector<double> outer(n);
  for (std::size_t i = 0; i < n; ++i)
    outer[i] = c1[i] * (k.la_n[i] * pref_a[i] + k.lb_n[i] * (total_b - pref_b[i]));
  double value = integrate_uniform(outer, h) / k.den;
  if (k.has_rank_one) {
    std::vector<double> f1(n), f2(n);
    for (std::size_t i = 0; i < n; ++i) {
      f1[i] = k.r1l_n[i] * c1[i];
      f2[i] = k.r1r_n[i] * c2[i];
    }
    value += k.r1_scale * integrate_uniform(f1, h) * integrate_uniform(f2, h);
  }
  return value;
}

// int K(t, t0) c1(t) dt * weight, impulse on the second slot.  Boundary
// impulses force a single branch (the inward-limit prescription); interior
// impulses choose the branch per node.
double smooth_impulse(const Kernel& k, const FundamentalPair& pair,
                      const std::vector<double>& c1, const Impulse& imp) {
  const auto& grid = pair.grid();
  const std::size_t n = grid.size();
  int forced = 0;
  if (imp.t >= pair.t_b()) forced = -1;      // impulse just inside t_b
  else if (imp.t <= pair.t_a()) forced = 1;  // impulse just inside t_a
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    int side = forced != 0 ? forced : order_side(grid[i], imp.t);
    f[i] = kernel_point(k, grid[i], imp.t, side) * c1[i];
  }
  return imp.weight * integrate_uniform(f, pair.step());
}

// Same with the impulse on the first slot.
double impulse_smooth(const Kernel& k, const FundamentalPair& pair,
                      const Impulse& imp, const std::vector<double>& c2) {
  const auto& grid = pair.grid();
  const std::size_t n = grid.size();
  int forced = 0;
  if (imp.t >= pair.t_b()) forced = 1;
  else if (imp.t <= pair.t_a()) forced = -1;
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    int side = forced != 0 ? forced : order_side(imp.t, grid[i]);
    f[i] = kernel_point(k, imp.t, grid[i], side) * c2[i];
  }
  return imp.weight * integrate_uniform(f, pair.step());
}

double impulse_impulse(const Kernel& k, const Impulse& a, const Impulse& b) {
  return a.weight * b.weight * kernel_point(k, a.t, b.t, order_side(a.t, b.t));
}

// Full bilinear form  int int K(t,t') dC1(t) dC2(t')  for currents made of a
// smooth part plus impulses.
double bilinear(const Kernel& k, const FundamentalPair& pair,
                const std::vector<double>& smooth1,
                const std::vector<Impulse>& imp1,
                const std::vector<double>& smooth2,
                const std::vector<Impulse>& imp2) {
  double total = 0.0;
  if (!smooth1.empty() && !smooth2.empty())
    total += smooth_smooth(k, smooth1, smooth2, pair.step());
  if (!smooth1.empty())
    for (const Impulse& b : imp2) total += smooth_impulse(k, pair, smooth1, b);
  if (!smooth2.empty())
    for (const Impulse& a : imp1) total += impulse_smooth(k, pair, a, smooth2);
  for (const Impulse& a : imp1)
    for (const Impulse& b : imp2) total += impulse_impulse(k, a, b);
  return total;
}

// int x_cl dJ + int p_cl dK along the classical solution.
double linear_term(const FundamentalPair& pair, const ClassicalPath& path,
                   const CurrentPair& c) {
  double total = 0.0;
  const std::size_t n = pair.grid().size();
  if (!c.smooth_j.empty()) {
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = path.x_at_node(i) * c.smooth_j[i];
    total += integrate_uniform(f, pair.step());
  }
  if (!c.smooth_k.empty()) {
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = path.p_at_node(i) * c.smooth_k[i];
    total += integrate_uniform(f, pair.step());
  }
  for (const Impulse& imp : c.impulses_j) total += imp.weight * path.x(imp.t);
  for (const Impulse& imp : c.impulses_k) total += imp.weight * path.p(imp.t);
  return total;
}

double current_current_term(const FundamentalPair& pair, Rep rep,
                            const CurrentPair& c, double mass) {
  if (c.empty()) return 0.0;
  bool have_j = !c.smooth_j.empty() || !c.impulses_j.empty();
  bool have_k = !c.smooth_k.empty() || !c.impulses_k.empty();
  double sum = 0.0;
  if (have_j) {
    Kernel jj = make_kernel(pair, rep, Channel::kJJ);
    sum += bilinear(jj, pair, c.smooth_j, c.impulses_j, c.smooth_j,
                    c.impulses_j) /
           mass;
  }
  if (have_j && have_k) {
    Kernel jk = make_kernel(pair, rep, Channel::kJK);
    Kernel kj = make_kernel(pair, rep, Channel::kKJ);
    sum += bilinear(jk, pair, c.smooth_j, c.impulses_j, c.smooth_k,
                    c.impulses_k);
    sum += bilinear(kj, pair, c.smooth_k, c.impulses_k, c.smooth_j,
                    c.impulses_j);
  }
  if (have_k) {
    Kernel kk = make_kernel(pair, rep, Channel::kKK);
    sum += mass * bilinear(kk, pair, c.smooth_k, c.impulses_k, c.smooth_k,
                           c.impulses_k);
  }
  return -0.5 * sum;
}

void require_no_caustic_x(const FundamentalPair& pair) {
  if (std::abs(pair.da_tb()) <= pair.caustic_tol())
    throw CausticError("D_a(t_b) vanishes (caustic)", pair.da_tb());
}

void require_no_caustic_p(const FundamentalPair& pair) {
  require_no_caustic_x(pair);
  double m = 1.0 + pair.da_dot_tb() * pair.db_dot_ta();
  if (std::abs(m) <= pair.caustic_tol())
    throw CausticError("momentum-representation denominator vanishes", m);
}

}  // namespace

void CurrentPair::validate(const FundamentalPair& pair) const {
  const std::size_t n = pair.grid().size();
  if (!smooth_j.empty() && smooth_j.size() != n)
    throw DomainError("smooth_j not sampled on the pair grid");
  if (!smooth_k.empty() && smooth_k.size() != n)
    throw DomainError("smooth_k not sampled on the pair grid");
  for (const auto* list : {&impulses_j, &impulses_k})
    for (const Impulse& imp : *list)
      if (!(imp.t >= pair.t_a() && imp.t <= pair.t_b()))
        throw DomainError("impulse time outside [t_a, t_b]");
}

double classical_action_x(const FundamentalPair& pair, double x_a, double x_b,
                          const CurrentPair& currents,
                          const PhysicalParams& params) {
  params.validate();
  currents.validate(pair);
  require_no_caustic_x(pair);
  double boundary = params.mass *
                    (pair.da_dot_tb() * x_b * x_b -
                     pair.db_dot_ta() * x_a * x_a - 2.0 * x_a * x_b) /
                    (2.0 * pair.da_tb());
  double action = boundary;
  if (!currents.empty()) {
    if (x_a != 0.0 || x_b != 0.0) {
      ClassicalPath path = classical_path_x(pair, x_a, x_b, params);
      action += linear_term(pair, path, currents);
    }
    action += current_current_term(pair, Rep::kX, currents, params.mass);
  }
  return action;
}

AmplitudeValue amplitude_x(const FundamentalPair& pair, double x_a, double x_b,
                           const CurrentPair& currents,
                           const PhysicalParams& params) {
  double action = classical_action_x(pair, x_a, x_b, currents, params);
  // d^2 A / dx_b dx_a = -M / D_a(t_b); prefactor sqrt(i/(2 pi hbar) * that).
  std::complex<double> arg(0.0, -params.mass /
                                    (2.0 * kPi * params.hbar * pair.da_tb()));
  AmplitudeValue out;
  out.action = action;
  out.prefactor = std::sqrt(arg);
  out.value = out.prefactor *
              std::exp(std::complex<double>(0.0, action / params.hbar));
  return out;
}

double classical_action_p(const FundamentalPair& pair, double p_a, double p_b,
                          const CurrentPair& currents,
                          const PhysicalParams& params) {
  params.validate();
  currents.validate(pair);
  require_no_caustic_p(pair);
  double m_denom = 1.0 + pair.da_dot_tb() * pair.db_dot_ta();
  double boundary = pair.da_tb() *
                    (pair.da_dot_tb() * p_a * p_a -
                     pair.db_dot_ta() * p_b * p_b - 2.0 * p_a * p_b) /
                    (2.0 * params.mass * m_denom);
  double action = boundary;
  if (!currents.empty()) {
    if (p_a != 0.0 || p_b != 0.0) {
      ClassicalPath path = classical_path_p(pair, p_a, p_b, params);
      action += linear_term(pair, path, currents);
    }
    action += current_current_term(pair, Rep::kP, currents, params.mass);
  }
  return action;
}

AmplitudeValue amplitude_p(const FundamentalPair& pair, double p_a, double p_b,
                           const CurrentPair& currents,
                           const PhysicalParams& params) {
  double action = classical_action_p(pair, p_a, p_b, currents, params);
  double m_denom = 1.0 + pair.da_dot_tb() * pair.db_dot_ta();
  // d^2 A / dp_b dp_a = -D_a(t_b)/(M m_denom); prefactor
  // sqrt(2 pi i hbar * that).
  std::complex<double> arg(0.0, -2.0 * kPi * params.hbar * pair.da_tb() /
                                    (params.mass * m_denom));
  AmplitudeValue out;
  out.action = action;
  out.prefactor = std::sqrt(arg);
  out.value = out.prefactor *
              std::exp(std::complex<double>(0.0, action / params.hbar));
  return out;
}

double endpoint_shift_residual(const FundamentalPair& pair, double x_a,
                               double x_b, const CurrentPair& currents,
                               const PhysicalParams& params) {
  AmplitudeValue lhs = amplitude_x(pair, x_a, x_b, currents, params);
  CurrentPair shifted = currents;
  shifted.impulses_k.push_back({pair.t_b(), x_b});
  shifted.impulses_k.push_back({pair.t_a(), -x_a});
  AmplitudeValue rhs = amplitude_x(pair, 0.0, 0.0, shifted, params);
  return std::abs(lhs.value - rhs.value);
}

double momentum_shift_residual(const FundamentalPair& pair, double p_a,
                               double p_b, const CurrentPair& currents,
                               const PhysicalParams& params) {
  AmplitudeValue lhs = amplitude_p(pair, p_a, p_b, currents, params);
  CurrentPair shifted = currents;
  shifted.impulses_j.push_back({pair.t_a(), p_a});
  shifted.impulses_j.push_back({pair.t_b(), -p_b});
  AmplitudeValue rhs = amplitude_p(pair, 0.0, 0.0, shifted, params);
  return std::abs(lhs.value - rhs.value);
}

AmplitudeValue partition_functional(const FundamentalPair& pair,
                                    const CurrentPair& currents,
                                    const PhysicalParams& params) {
  params.validate();
  currents.validate(pair);
  require_no_caustic_x(pair);
  double a = pair.da_dot_tb() - pair.db_dot_ta() - 2.0;
  if (std::abs(a) <= pair.caustic_tol())
    throw CausticError("periodic denominator a(t_a,t_b) vanishes", a);
  double action =
      current_current_term(pair, Rep::kPeriodic, currents, params.mass);
  AmplitudeValue out;
  out.action = action;
  out.prefactor = 1.0 / std::sqrt(std::complex<double>(a, 0.0));
  out.value = out.prefactor *
              std::exp(std::complex<double>(0.0, action / params.hbar));
  return out;
}

}  // namespace tdho
