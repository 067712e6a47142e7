#pragma once

#include <stdexcept>
#include <string>

namespace tdho {

/// Base class for all computation failures raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside the contract of an operation (time outside [t_a,t_b],
/// parity violation, missing table entry, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// A denominator of the Green-function algebra is numerically zero:
/// D_a(t_b) for the Dirichlet channels, 1 + Ddot_a(t_b) Ddot_b(t_a) for the
/// momentum representation, or a(t_a,t_b) for the periodic one.
class CausticError : public Error {
 public:
  CausticError(const std::string& what, double denominator)
      : Error(what), denominator_(denominator) {}
  double denominator() const { return denominator_; }

 private:
  double denominator_;
};

/// The ODE integrator met a non-finite frequency value.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double t) : Error(what), t_(t) {}
  double offending_time() const { return t_; }

 private:
  double t_;
};

/// The tridiagonal lattice operator is singular (discrete caustic) or fails a
/// definiteness precondition.
class LatticeError : public Error {
 public:
  explicit LatticeError(const std::string& what) : Error(what) {}
};

/// Requested evaluation is not defined in the selected smearing mode.
class ModeError : public Error {
 public:
  explicit ModeError(const std::string& what) : Error(what) {}
};

/// Quadrature dimension above the supported cap.
class SizeError : public Error {
 public:
  explicit SizeError(const std::string& what) : Error(what) {}
};

/// Case left unspecified on purpose (e.g. both diagonal blocks singular).
class NotImplementedError : public Error {
 public:
  explicit NotImplementedError(const std::string& what) : Error(what) {}
};

/// Malformed run configuration. Kept separate from Error so the CLI can map
/// it to its own exit code.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tdho
