#pragma once

#include <string>
#include <vector>

#include "tdho/errors.hpp"

namespace tdho {

/// Global physical constants of a run.
struct PhysicalParams {
  double mass = 1.0;
  double hbar = 1.0;

  void validate() const {
    if (!(mass > 0.0)) throw DomainError("mass must be positive");
    if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
  }
};

/// Time-dependent oscillator frequency Omega(t) on [t_a, t_b].
///
/// Profiles store the amplitude Omega (or, for the omega_squared_table kind,
/// Omega^2 directly, which admits inverted regimes Omega^2 < 0).  The square
/// is computed on demand.  An extra coupling factor multiplies Omega^2; it is
/// how the one-parameter operator family  -d^2/dt^2 - g Omega^2(t)  is
/// represented without duplicating profile kinds.
///
/// Immutable after construction; safe to evaluate concurrently.
class FrequencyProfile {
 public:
  enum class Kind {
    kConstant,
    kPiecewiseConstant,
    kPolynomial,
    kTabulated,
    kOmegaSquaredTable,
  };

  static FrequencyProfile constant(double omega, double t_a, double t_b);
  /// `breakpoints` are the interior segment edges (strictly increasing,
  /// inside (t_a,t_b)); `omegas` has one more entry than `breakpoints`.
  static FrequencyProfile piecewise_constant(std::vector<double> breakpoints,
                                             std::vector<double> omegas,
                                             double t_a, double t_b);
  /// Omega(t) = sum_k coefficients[k] * t^k.
  static FrequencyProfile polynomial(std::vector<double> coefficients,
                                     double t_a, double t_b);
  /// Linear interpolation through (times, omegas), clamped beyond the ends.
  static FrequencyProfile tabulated(std::vector<double> times,
                                    std::vector<double> omegas, double t_a,
                                    double t_b);
  /// Linear interpolation of Omega^2 itself; values may be negative.
  static FrequencyProfile omega_squared_table(std::vector<double> times,
                                              std::vector<double> values,
                                              double t_a, double t_b);

  Kind kind() const { return kind_; }
  double t_a() const { return t_a_; }
  double t_b() const { return t_b_; }
  double duration() const { return t_b_ - t_a_; }
  double coupling() const { return coupling_; }

  /// Copy of this profile with Omega^2 multiplied by g (Eq. family coupling).
  FrequencyProfile coupling_scaled(double g) const;

  /// Omega^2(t), the quantity entering the fluctuation operator.  Negative
  /// values are legal; callers decide admissibility.
  double omega_squared(double t) const;

  /// Omega(t).  Undefined (DomainError) where Omega^2 < 0.
  double omega(double t) const;

  /// dOmega/dt; right-sided at piecewise breakpoints (the derivative of the
  /// segment to the right, i.e. zero for piecewise-constant profiles).
  double omega_derivative(double t) const;

  /// d(Omega^2)/dt, same one-sided convention.  Avoids the square root, so it
  /// is defined in inverted regimes too.
  double omega_squared_derivative(double t) const;

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }

 private:
  FrequencyProfile(Kind kind, double t_a, double t_b);
  void check_domain(double t) const;
  double raw_amplitude(double t) const;       // Omega before coupling
  double raw_amplitude_slope(double t) const; // dOmega/dt before coupling
  double raw_square(double t) const;
  double raw_square_slope(double t) const;

  Kind kind_;
  double t_a_;
  double t_b_;
  double coupling_ = 1.0;
  std::vector<double> knots_;   // breakpoints / sample times (unused: constant)
  std::vector<double> values_;  // omegas / coefficients / omega^2 samples
};

/// Free-particle profile Omega == 0.
FrequencyProfile free_particle_profile(double t_a, double t_b);

std::string to_string(FrequencyProfile::Kind kind);

}  // namespace tdho
