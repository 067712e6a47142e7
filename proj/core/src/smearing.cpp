#include "tdho/smearing.hpp"

#include <algorithm>
#include <cmath>

#include "tdho/quadrature.hpp"

namespace tdho {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxMomentLetters = 12;
constexpr int kQuadratureOrder = 40;
constexpr int kMaxQuadratureAxes = 3;
}  // namespace

LocalFunction LocalFunction::polynomial(std::vector<double> coeffs,
                                        Argument arg) {
  LocalFunction f;
  f.kind = Kind::kPolynomial;
  f.argument = arg;
  f.coefficients = std::move(coeffs);
  if (f.coefficients.empty()) f.coefficients.push_back(0.0);
  f.validate();
  return f;
}

LocalFunction LocalFunction::gaussian(double a, double b, Argument arg) {
  LocalFunction f;
  f.kind = Kind::kGaussian;
  f.argument = arg;
  f.gauss_a = a;
  f.gauss_b = b;
  f.validate();
  return f;
}

LocalFunction LocalFunction::tabulated(std::vector<double> xs,
                                       std::vector<double> fs, Argument arg) {
  LocalFunction f;
  f.kind = Kind::kTabulated;
  f.argument = arg;
  f.table_x = std::move(xs);
  f.table_f = std::move(fs);
  f.validate();
  return f;
}

int LocalFunction::degree() const {
  int d = 0;
  for (std::size_t k = 0; k < coefficients.size(); ++k)
    if (coefficients[k] != 0.0) d = static_cast<int>(k);
  return d;
}

void LocalFunction::validate() const {
  switch (kind) {
    case Kind::kPolynomial:
      if (coefficients.size() > 17)
        throw DomainError("polynomial local function degree above 16");
      break;
    case Kind::kGaussian:
      if (!std::isfinite(gauss_a) || !std::isfinite(gauss_b))
        throw DomainError("gaussian local function with non-finite parameters");
      break;
    case Kind::kTabulated:
      if (table_x.size() < 2 || table_x.size() != table_f.size())
        throw DomainError("tabulated local function needs matched samples");
      for (std::size_t i = 1; i < table_x.size(); ++i)
        if (!(table_x[i] > table_x[i - 1]))
          throw DomainError("tabulated abscissae must be strictly increasing");
      break;
  }
}

double LocalFunction::eval(double v) const {
  switch (kind) {
    case Kind::kPolynomial: {
      double r = 0.0;
      for (std::size_t k = coefficients.size(); k-- > 0;)
        r = r * v + coefficients[k];
      return r;
    }
    case Kind::kGaussian:
      return std::exp(-gauss_a * v * v + gauss_b * v);
    case Kind::kTabulated: {
      if (v <= table_x.front()) return table_f.front();
      if (v >= table_x.back()) return table_f.back();
      auto it = std::upper_bound(table_x.begin(), table_x.end(), v);
      std::size_t i = static_cast<std::size_t>(it - table_x.begin()) - 1;
      double s = (v - table_x[i]) / (table_x[i + 1] - table_x[i]);
      return table_f[i] + s * (table_f[i + 1] - table_f[i]);
    }
  }
  throw DomainError("unknown local function kind");
}

SmearingMode parse_mode(const std::string& name) {
  if (name == "fresnel") return SmearingMode::kFresnel;
  if (name == "euclidean") return SmearingMode::kEuclidean;
  throw DomainError("unknown smearing mode: " + name);
}

std::string to_string(SmearingMode mode) {
  return mode == SmearingMode::kFresnel ? "fresnel" : "euclidean";
}

std::complex<double> SmearingDistribution::covariance(int a, int b) const {
  double base = scales_[a] * scales_[b] * g_(a, b);
  if (mode_ == SmearingMode::kFresnel) return {0.0, base};
  return {base, 0.0};
}

SmearingDistribution build_distribution(const std::vector<double>& times_x,
                                        const std::vector<double>& times_p,
                                        const GreensEvaluator& evaluator,
                                        const ClassicalPath& path,
                                        const PhysicalParams& params,
                                        double omega_ref, SmearingMode mode) {
  params.validate();
  if (!(omega_ref > 0.0))
    throw DomainError("omega_ref must be positive");
  if (evaluator.representation() == GreensEvaluator::Representation::kMomentumP)
    throw DomainError(
        "build_distribution expects the dirichlet_x or periodic evaluator");
  const int n = static_cast<int>(times_x.size());
  const int m = static_cast<int>(times_p.size());
  if (n + m == 0) throw DomainError("build_distribution: no insertion times");
  const FundamentalPair& pair = evaluator.pair();
  for (double t : times_x)
    if (!(t >= pair.t_a() && t <= pair.t_b()))
      throw DomainError("insertion time outside [t_a, t_b]");
  for (double t : times_p)
    if (!(t >= pair.t_a() && t <= pair.t_b()))
      throw DomainError("insertion time outside [t_a, t_b]");

  SmearingDistribution dist;
  dist.n_ = n;
  dist.m_ = m;
  dist.mode_ = mode;
  dist.omega_ref_ = omega_ref;
  dist.params_ = params;

  const int k = n + m;
  dist.g_ = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      dist.g_(i, j) =
          omega_ref * evaluator.green(Channel::kJJ, times_x[i], times_x[j]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      double b = -evaluator.green(Channel::kJK, times_x[i], times_p[j]);
      dist.g_(i, n + j) = b;
      dist.g_(n + j, i) = b;
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      dist.g_(n + i, n + j) =
          evaluator.green(Channel::kKK, times_p[i], times_p[j]) / omega_ref;

  // Block inverse and determinant through the two Schur factorizations;
  // cross-checked whenever both diagonal blocks are regular.
  const auto a_block = dist.g_.topLeftCorner(n, n);
  const auto b_block = dist.g_.topRightCorner(n, m);
  const auto c_block = dist.g_.bottomRightCorner(m, m);
  Eigen::FullPivLU<Eigen::MatrixXd> lu_c, lu_a;
  if (m > 0) lu_c.compute(c_block);
  if (n > 0) lu_a.compute(a_block);
  // Regularity is judged against the scale of the whole matrix, not the
  // block's own largest pivot, so an all-but-zero block counts as singular.
  const double g_scale = std::max(1.0, dist.g_.cwiseAbs().maxCoeff());
  auto regular = [g_scale](const Eigen::FullPivLU<Eigen::MatrixXd>& lu) {
    return lu.isInvertible() && lu.maxPivot() > 1e-12 * g_scale;
  };
  const bool c_ok = m == 0 || regular(lu_c);
  const bool a_ok = n == 0 || regular(lu_a);
  if (!c_ok && !a_ok)
    throw NotImplementedError(
        "both diagonal blocks singular: no determinant factorization applies");

  double det_via_c = 0.0, det_via_a = 0.0;
  Eigen::MatrixXd inv(k, k);
  if (c_ok) {
    Eigen::MatrixXd c_inv = m > 0 ? lu_c.inverse() : Eigen::MatrixXd(0, 0);
    Eigen::MatrixXd x = a_block - b_block * c_inv * b_block.transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu_x;
    if (n > 0) lu_x.compute(x);
    if (n > 0 && !lu_x.isInvertible())
      throw LatticeError("smearing matrix G is singular");
    Eigen::MatrixXd x_inv = n > 0 ? lu_x.inverse() : Eigen::MatrixXd(0, 0);
    det_via_c = (m > 0 ? lu_c.determinant() : 1.0) *
                (n > 0 ? lu_x.determinant() : 1.0);
    inv.topLeftCorner(n, n) = x_inv;
    inv.topRightCorner(n, m) = -x_inv * b_block * c_inv;
    inv.bottomLeftCorner(m, n) = -c_inv * b_block.transpose() * x_inv;
    inv.bottomRightCorner(m, m) =
        c_inv + c_inv * b_block.transpose() * x_inv * b_block * c_inv;
    dist.det_g_ = det_via_c;
    dist.g_inv_ = inv;
  }
  if (a_ok) {
    Eigen::MatrixXd a_inv = n > 0 ? lu_a.inverse() : Eigen::MatrixXd(0, 0);
    Eigen::MatrixXd xp = c_block - b_block.transpose() * a_inv * b_block;
    Eigen::FullPivLU<Eigen::MatrixXd> lu_xp;
    if (m > 0) lu_xp.compute(xp);
    if (m > 0 && !lu_xp.isInvertible())
      throw LatticeError("smearing matrix G is singular");
    Eigen::MatrixXd xp_inv = m > 0 ? lu_xp.inverse() : Eigen::MatrixXd(0, 0);
    det_via_a = (n > 0 ? lu_a.determinant() : 1.0) *
                (m > 0 ? lu_xp.determinant() : 1.0);
    if (!c_ok) {
      inv.bottomRightCorner(m, m) = xp_inv;
      inv.topRightCorner(n, m) = -a_inv * b_block * xp_inv;
      inv.bottomLeftCorner(m, n) = -xp_inv * b_block.transpose() * a_inv;
      inv.topLeftCorner(n, n) =
          a_inv + a_inv * b_block * xp_inv * b_block.transpose() * a_inv;
      dist.det_g_ = det_via_a;
      dist.g_inv_ = inv;
    }
  }
  dist.det_delta_ = (c_ok && a_ok && det_via_c != 0.0)
                        ? std::abs(det_via_c - det_via_a) / std::abs(det_via_c)
                        : 0.0;

  dist.means_.resize(k);
  dist.scales_.resize(k);
  const double sx = std::sqrt(params.hbar / (params.mass * omega_ref));
  const double sp = -std::sqrt(params.hbar * params.mass * omega_ref);
  for (int i = 0; i < n; ++i) {
    dist.means_[i] = path.x(times_x[i]);
    dist.scales_[i] = sx;
  }
  for (int j = 0; j < m; ++j) {
    dist.means_[n + j] = path.p(times_p[j]);
    dist.scales_[n + j] = sp;
  }

  if (mode == SmearingMode::kEuclidean) {
    Eigen::LLT<Eigen::MatrixXd> llt(dist.g_);
    if (llt.info() != Eigen::Success)
      throw DomainError(
          "euclidean mode requires a positive definite quadratic form");
  }
  return dist;
}

namespace {

// Central Gaussian moment E[prod w_{letters}] by Wick pairing over the
// complex covariance.
std::complex<double> central_moment(const SmearingDistribution& dist,
                                    const std::vector<int>& letters) {
  if (letters.empty()) return 1.0;
  if (letters.size() % 2 == 1) return 0.0;
  const int n = static_cast<int>(letters.size());
  std::vector<bool> used(n, false);
  std::complex<double> total = 0.0;
  std::complex<double> partial = 1.0;
  auto recurse = [&](auto&& self) -> void {
    int first = -1;
    for (int i = 0; i < n; ++i)
      if (!used[i]) {
        first = i;
        break;
      }
    if (first < 0) {
      total += partial;
      return;
    }
    used[first] = true;
    for (int j = first + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = true;
      std::complex<double> saved = partial;
      partial *= dist.covariance(letters[first], letters[j]);
      self(self);
      partial = saved;
      used[j] = false;
    }
    used[first] = false;
  };
  recurse(recurse);
  return total;
}

std::int64_t binomial(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::complex<double> raw_moment(const SmearingDistribution& dist,
                                const std::vector<int>& multi_index,
                                int letter_cap) {
  const int k = dist.size();
  if (static_cast<int>(multi_index.size()) != k)
    throw DomainError("moments: multi_index size mismatch");
  int total_order = 0;
  for (int p : multi_index) {
    if (p < 0) throw DomainError("moments: negative power");
    total_order += p;
  }
  if (total_order > letter_cap)
    throw DomainError("moments: total order above the supported cap");

  // Expand each slot into mean + fluctuation and Wick the fluctuation part.
  std::vector<int> central(k, 0);
  std::complex<double> total = 0.0;
  auto recurse = [&](auto&& self, int slot, std::complex<double> mean_part)
      -> void {
    if (slot == k) {
      std::vector<int> letters;
      for (int a = 0; a < k; ++a)
        for (int r = 0; r < central[a]; ++r) letters.push_back(a);
      total += mean_part * central_moment(dist, letters);
      return;
    }
    for (int s = 0; s <= multi_index[slot]; ++s) {
      central[slot] = s;
      double mu = dist.mean(slot);
      double mean_pow = 1.0;
      for (int r = 0; r < multi_index[slot] - s; ++r) mean_pow *= mu;
      self(self, slot + 1,
           mean_part * static_cast<double>(binomial(multi_index[slot], s)) *
               mean_pow);
    }
    central[slot] = 0;
  };
  recurse(recurse, 0, 1.0);
  return total;
}

}  // namespace

std::complex<double> moments(const SmearingDistribution& dist,
                             const std::vector<int>& multi_index) {
  return raw_moment(dist, multi_index, 8);
}

std::complex<double> expectation(const SmearingDistribution& dist,
                                 const std::vector<LocalFunction>& functions) {
  const int k = dist.size();
  if (static_cast<int>(functions.size()) != k)
    throw DomainError("expectation: one local function per insertion required");
  for (int a = 0; a < k; ++a) {
    functions[a].validate();
    bool momentum_slot = a >= dist.n_positions();
    if (momentum_slot !=
        (functions[a].argument == LocalFunction::Argument::kMomentum))
      throw DomainError("expectation: argument kind does not match the slot");
  }

  const bool all_polynomial =
      std::all_of(functions.begin(), functions.end(),
                  [](const LocalFunction& f) { return f.is_polynomial(); });

  if (all_polynomial) {
    // Analytic Gaussian moments, term by term over the coefficient grid.
    std::vector<int> index(k, 0);
    std::complex<double> total = 0.0;
    auto recurse = [&](auto&& self, int slot, double coeff) -> void {
      if (coeff == 0.0) return;
      if (slot == k) {
        total += coeff * raw_moment(dist, index, kMaxMomentLetters);
        return;
      }
      const auto& cs = functions[slot].coefficients;
      for (std::size_t d = 0; d < cs.size(); ++d) {
        index[slot] = static_cast<int>(d);
        self(self, slot + 1, coeff * cs[d]);
      }
      index[slot] = 0;
    };
    recurse(recurse, 0, 1.0);
    return total;
  }

  if (dist.mode() != SmearingMode::kEuclidean)
    throw ModeError(
        "non-polynomial local functions require the euclidean mode");
  if (k > kMaxQuadratureAxes)
    throw SizeError("quadrature supports at most 3 insertion slots");
  for (const LocalFunction& f : functions)
    if (f.kind == LocalFunction::Kind::kGaussian && !(f.gauss_a > 0.0))
      throw DomainError("gaussian local function needs a > 0 in euclidean mode");

  // y = mean + sqrt(2) L z per axis against the normalized density.
  Eigen::MatrixXd sigma(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) sigma(a, b) = dist.covariance(a, b).real();
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw DomainError("euclidean covariance not positive definite");
  Eigen::MatrixXd l = llt.matrixL();

  GaussHermiteRule rule = gauss_hermite(kQuadratureOrder);
  const int q = kQuadratureOrder;
  std::vector<int> idx(k, 0);
  double total = 0.0;
  Eigen::VectorXd z(k), y(k);
  while (true) {
    double weight = 1.0;
    for (int a = 0; a < k; ++a) {
      z(a) = rule.nodes[idx[a]];
      weight *= rule.weights[idx[a]];
    }
    y = std::sqrt(2.0) * (l * z);
    double f_val = 1.0;
    for (int a = 0; a < k; ++a) f_val *= functions[a].eval(dist.mean(a) + y(a));
    total += weight * f_val;
    int axis = 0;
    while (axis < k && ++idx[axis] == q) {
      idx[axis] = 0;
      ++axis;
    }
    if (axis == k) break;
  }
  return total / std::pow(kPi, k / 2.0);
}

}  // namespace tdho
