#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "tdho/greens.hpp"

namespace tdho {

/// Local factor F(x(t_n)) or F(p(t_m)) of a correlator.
struct LocalFunction {
  enum class Kind { kPolynomial, kGaussian, kTabulated };
  enum class Argument { kPosition, kMomentum };

  Kind kind = Kind::kPolynomial;
  Argument argument = Argument::kPosition;
  std::vector<double> coefficients;  // polynomial: sum_k c_k v^k, degree <= 16
  double gauss_a = 1.0;              // gaussian: exp(-a v^2 + b v)
  double gauss_b = 0.0;
  std::vector<double> table_x;       // tabulated: linear interp, clamped ends
  std::vector<double> table_f;

  static LocalFunction polynomial(std::vector<double> coeffs,
                                  Argument arg = Argument::kPosition);
  static LocalFunction gaussian(double a, double b,
                                Argument arg = Argument::kPosition);
  static LocalFunction tabulated(std::vector<double> xs, std::vector<double> fs,
                                 Argument arg = Argument::kPosition);

  bool is_polynomial() const { return kind == Kind::kPolynomial; }
  int degree() const;
  double eval(double v) const;
  void validate() const;
};

enum class SmearingMode { kFresnel, kEuclidean };

SmearingMode parse_mode(const std::string& name);
std::string to_string(SmearingMode mode);

/// Block-Gaussian distribution of the smearing formula: dimensionless
/// Green-function matrix G = [[A, B], [B^T, C]] with A = Omega_ref G_jj,
/// B = -G_jk, C = G_kk / Omega_ref, its block inverse and determinant, the
/// classical means, and the unit scales mapping the dimensionless variables
/// back to positions/momenta.
///
/// Fresnel mode keeps the factors of i of the literal formula (so only
/// polynomial moments are evaluated analytically); euclidean mode reads the
/// quadratic form as a genuine covariance, which must be positive definite,
/// and admits quadrature of non-polynomial factors.
class SmearingDistribution {
 public:
  int n_positions() const { return n_; }
  int n_momenta() const { return m_; }
  int size() const { return n_ + m_; }
  SmearingMode mode() const { return mode_; }
  double omega_ref() const { return omega_ref_; }
  const PhysicalParams& params() const { return params_; }

  const Eigen::MatrixXd& g_matrix() const { return g_; }
  const Eigen::MatrixXd& g_inverse() const { return g_inv_; }
  double det_g() const { return det_g_; }
  /// Relative difference of det C det X vs det X' det A (0 when only one
  /// factorization is defined).
  double det_factorization_delta() const { return det_delta_; }

  /// Classical mean of slot a (x_cl or p_cl at the insertion time).
  double mean(int a) const { return means_[a]; }
  /// Unit scale of slot a: x = mean + scale * w (scale < 0 on momentum slots,
  /// carrying the sign of the w-vector convention).
  double scale(int a) const { return scales_[a]; }

  /// Central covariance of the dimensionful variables; purely imaginary
  /// entries in fresnel mode.
  std::complex<double> covariance(int a, int b) const;

 private:
  friend SmearingDistribution build_distribution(
      const std::vector<double>& times_x, const std::vector<double>& times_p,
      const GreensEvaluator& evaluator, const ClassicalPath& path,
      const PhysicalParams& params, double omega_ref, SmearingMode mode);

  int n_ = 0, m_ = 0;
  SmearingMode mode_ = SmearingMode::kFresnel;
  double omega_ref_ = 1.0;
  PhysicalParams params_;
  Eigen::MatrixXd g_, g_inv_;
  double det_g_ = 0.0, det_delta_ = 0.0;
  std::vector<double> means_, scales_;
};

SmearingDistribution build_distribution(const std::vector<double>& times_x,
                                        const std::vector<double>& times_p,
                                        const GreensEvaluator& evaluator,
                                        const ClassicalPath& path,
                                        const PhysicalParams& params,
                                        double omega_ref, SmearingMode mode);

/// Raw moment E[ prod_a v_a^{k_a} ] of the distribution (v = x or p per
/// slot), |k| <= 8.  Gaussian moment formula: mean expansion plus Wick sums
/// over the mode's covariance.  Odd central moments vanish by symmetry.
std::complex<double> moments(const SmearingDistribution& dist,
                             const std::vector<int>& multi_index);

/// Smearing-formula expectation of a product of local functions, one per
/// slot (positions first, then momenta).  Polynomial products are evaluated
/// analytically in either mode; non-polynomial factors require euclidean
/// mode and tensor Gauss-Hermite quadrature (order 40, at most 3 slots).
std::complex<double> expectation(const SmearingDistribution& dist,
                                 const std::vector<LocalFunction>& functions);

}  // namespace tdho
