#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "tdho/frequency.hpp"
#include "tdho/functional.hpp"
#include "tdho/greens.hpp"
#include "tdho/smearing.hpp"

namespace tdho {

using Json = nlohmann::json;

struct GreensSpec {
  GreensEvaluator::Representation representation =
      GreensEvaluator::Representation::kDirichletX;
  Channel channel = Channel::kJJ;
  int grid_points = 41;
  // "grid" emits (t, t2, value); "fundamental_pair" dumps the pair table
  // (t, Da, Da_dot, Db, Db_dot).
  std::string output = "grid";
};

struct CurrentTable {
  std::vector<double> times;
  std::vector<double> values;
};

struct AmplitudeSpec {
  std::string representation = "x";  // "x" or "p"
  double end_a = 0.0;
  double end_b = 0.0;
  std::optional<CurrentTable> smooth_j;
  std::optional<CurrentTable> smooth_k;
  std::vector<Impulse> impulses_j;
  std::vector<Impulse> impulses_k;
};

struct CorrelatorSpec {
  std::vector<double> times_x;
  std::vector<double> times_p;
  std::vector<LocalFunction> functions;
  SmearingMode mode = SmearingMode::kFresnel;
  double omega_ref = 1.0;
  double end_a = 0.0;
  double end_b = 0.0;
  GreensEvaluator::Representation representation =
      GreensEvaluator::Representation::kDirichletX;
};

struct DiagramsSpec {
  std::string vertex;
};

struct ValidateSpec {
  std::string preset = "quick";  // "quick" or "full"
};

struct RunConfig {
  PhysicalParams params;
  std::optional<FrequencyProfile> profile;
  std::size_t n_steps = 1024;

  std::optional<GreensSpec> greens;
  std::optional<AmplitudeSpec> amplitude;
  std::optional<CorrelatorSpec> correlator;
  std::optional<DiagramsSpec> diagrams;
  std::optional<ValidateSpec> validate;
};

/// Strict parse: unknown keys anywhere are rejected (ConfigError).
RunConfig parse_config(const Json& doc);
RunConfig parse_config_text(const std::string& text);

Json profile_to_json(const FrequencyProfile& profile);
FrequencyProfile profile_from_json(const Json& node, double t_a, double t_b);

/// Linear interpolation of a breakpoint table onto the pair grid
/// (clamped beyond the table ends).
std::vector<double> sample_current_table(const CurrentTable& table,
                                         const std::vector<double>& grid);

}  // namespace tdho
