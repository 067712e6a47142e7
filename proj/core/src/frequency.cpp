#include "tdho/frequency.hpp"

#include <algorithm>
#include <cmath>

namespace tdho {

namespace {

// Index of the segment [times[i], times[i+1]) containing t, clamped to the
// table range.  Right-continuous at interior sample points.
std::size_t segment_index(const std::vector<double>& times, double t) {
  if (t <= times.front()) return 0;
  if (t >= times[times.size() - 2]) return times.size() - 2;
  auto it = std::upper_bound(times.begin(), times.end(), t);
  return static_cast<std::size_t>(it - times.begin()) - 1;
}

}  // namespace

FrequencyProfile::FrequencyProfile(Kind kind, double t_a, double t_b)
    : kind_(kind), t_a_(t_a), t_b_(t_b) {
  if (!(t_a < t_b)) throw DomainError("frequency profile requires t_a < t_b");
  if (!std::isfinite(t_a) || !std::isfinite(t_b))
    throw DomainError("frequency profile domain must be finite");
}

FrequencyProfile FrequencyProfile::constant(double omega, double t_a,
                                            double t_b) {
  FrequencyProfile p(Kind::kConstant, t_a, t_b);
  if (!std::isfinite(omega)) throw DomainError("constant omega must be finite");
  p.values_ = {omega};
  return p;
}

FrequencyProfile FrequencyProfile::piecewise_constant(
    std::vector<double> breakpoints, std::vector<double> omegas, double t_a,
    double t_b) {
  FrequencyProfile p(Kind::kPiecewiseConstant, t_a, t_b);
  if (omegas.size() != breakpoints.size() + 1)
    throw DomainError("piecewise profile needs one more omega than breakpoints");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > t_a && breakpoints[i] < t_b))
      throw DomainError("piecewise breakpoints must lie inside (t_a, t_b)");
    if (i > 0 && !(breakpoints[i] > breakpoints[i - 1]))
      throw DomainError("piecewise breakpoints must be strictly increasing");
  }
  for (double w : omegas)
    if (!std::isfinite(w)) throw DomainError("piecewise omega must be finite");
  p.knots_ = std::move(breakpoints);
  p.values_ = std::move(omegas);
  return p;
}

FrequencyProfile FrequencyProfile::polynomial(std::vector<double> coefficients,
                                              double t_a, double t_b) {
  FrequencyProfile p(Kind::kPolynomial, t_a, t_b);
  if (coefficients.empty()) coefficients.push_back(0.0);
  for (double c : coefficients)
    if (!std::isfinite(c)) throw DomainError("polynomial coefficient not finite");
  p.values_ = std::move(coefficients);
  return p;
}

namespace {
void check_table(const std::vector<double>& times,
                 const std::vector<double>& values) {
  if (times.size() < 2) throw DomainError("table needs at least 2 samples");
  if (times.size() != values.size())
    throw DomainError("table times/values size mismatch");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw DomainError("table times must be strictly increasing");
  for (double v : values)
    if (!std::isfinite(v)) throw DomainError("table value not finite");
}
}  // namespace

FrequencyProfile FrequencyProfile::tabulated(std::vector<double> times,
                                             std::vector<double> omegas,
                                             double t_a, double t_b) {
  FrequencyProfile p(Kind::kTabulated, t_a, t_b);
  check_table(times, omegas);
  p.knots_ = std::move(times);
  p.values_ = std::move(omegas);
  return p;
}

FrequencyProfile FrequencyProfile::omega_squared_table(
    std::vector<double> times, std::vector<double> values, double t_a,
    double t_b) {
  FrequencyProfile p(Kind::kOmegaSquaredTable, t_a, t_b);
  check_table(times, values);
  p.knots_ = std::move(times);
  p.values_ = std::move(values);
  return p;
}

FrequencyProfile free_particle_profile(double t_a, double t_b) {
  return FrequencyProfile::constant(0.0, t_a, t_b);
}

FrequencyProfile FrequencyProfile::coupling_scaled(double g) const {
  if (!(g >= 0.0))
    throw DomainError("coupling factor must be non-negative");
  FrequencyProfile p = *this;
  p.coupling_ *= g;
  return p;
}

void FrequencyProfile::check_domain(double t) const {
  if (!(t >= t_a_ && t <= t_b_))
    throw DomainError("evaluation time outside [t_a, t_b]");
}

double FrequencyProfile::raw_amplitude(double t) const {
  switch (kind_) {
    case Kind::kConstant:
      return values_[0];
    case Kind::kPiecewiseConstant: {
      // Right-continuous: value of the segment to the right of a breakpoint.
      auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
      return values_[static_cast<std::size_t>(it - knots_.begin())];
    }
    case Kind::kPolynomial: {
      double v = 0.0;
      for (std::size_t k = values_.size(); k-- > 0;) v = v * t + values_[k];
      return v;
    }
    case Kind::kTabulated: {
      if (t <= knots_.front()) return values_.front();
      if (t >= knots_.back()) return values_.back();
      std::size_t i = segment_index(knots_, t);
      double s = (t - knots_[i]) / (knots_[i + 1] - knots_[i]);
      return values_[i] + s * (values_[i + 1] - values_[i]);
    }
    case Kind::kOmegaSquaredTable: {
      double sq = raw_square(t);
      if (sq < 0.0)
        throw DomainError("omega undefined where omega^2 < 0");
      return std::sqrt(sq);
    }
  }
  throw DomainError("unknown profile kind");
}

double FrequencyProfile::raw_amplitude_slope(double t) const {
  switch (kind_) {
    case Kind::kConstant:
    case Kind::kPiecewiseConstant:
      return 0.0;
    case Kind::kPolynomial: {
      double v = 0.0;
      for (std::size_t k = values_.size(); k-- > 1;)
        v = v * t + static_cast<double>(k) * values_[k];
      return v;
    }
    case Kind::kTabulated: {
      if (t < knots_.front() || t > knots_.back()) return 0.0;
      std::size_t i = segment_index(knots_, t);
      return (values_[i + 1] - values_[i]) / (knots_[i + 1] - knots_[i]);
    }
    case Kind::kOmegaSquaredTable: {
      double sq = raw_square(t);
      if (!(sq > 0.0))
        throw DomainError("omega derivative undefined where omega^2 <= 0");
      return raw_square_slope(t) / (2.0 * std::sqrt(sq));
    }
  }
  throw DomainError("unknown profile kind");
}

double FrequencyProfile::raw_square(double t) const {
  if (kind_ == Kind::kOmegaSquaredTable) {
    if (t <= knots_.front()) return values_.front();
    if (t >= knots_.back()) return values_.back();
    std::size_t i = segment_index(knots_, t);
    double s = (t - knots_[i]) / (knots_[i + 1] - knots_[i]);
    return values_[i] + s * (values_[i + 1] - values_[i]);
  }
  double w = raw_amplitude(t);
  return w * w;
}

double FrequencyProfile::raw_square_slope(double t) const {
  if (kind_ == Kind::kOmegaSquaredTable) {
    if (t < knots_.front() || t > knots_.back()) return 0.0;
    std::size_t i = segment_index(knots_, t);
    return (values_[i + 1] - values_[i]) / (knots_[i + 1] - knots_[i]);
  }
  return 2.0 * raw_amplitude(t) * raw_amplitude_slope(t);
}

double FrequencyProfile::omega_squared(double t) const {
  check_domain(t);
  double v = coupling_ * raw_square(t);
  if (!std::isfinite(v)) throw DomainError("omega^2 evaluated non-finite");
  return v;
}

double FrequencyProfile::omega(double t) const {
  check_domain(t);
  return std::sqrt(coupling_) * raw_amplitude(t);
}

double FrequencyProfile::omega_derivative(double t) const {
  if (!(t > t_a_ && t < t_b_))
    throw DomainError("omega derivative defined on the open interval only");
  return std::sqrt(coupling_) * raw_amplitude_slope(t);
}

double FrequencyProfile::omega_squared_derivative(double t) const {
  if (!(t > t_a_ && t < t_b_))
    throw DomainError("omega^2 derivative defined on the open interval only");
  return coupling_ * raw_square_slope(t);
}

std::string to_string(FrequencyProfile::Kind kind) {
  switch (kind) {
    case FrequencyProfile::Kind::kConstant: return "constant";
    case FrequencyProfile::Kind::kPiecewiseConstant: return "piecewise_constant";
    case FrequencyProfile::Kind::kPolynomial: return "polynomial";
    case FrequencyProfile::Kind::kTabulated: return "tabulated";
    case FrequencyProfile::Kind::kOmegaSquaredTable: return "omega_squared_table";
  }
  return "unknown";
}

}  // namespace tdho
