#include "tdho/config.hpp"

#include <algorithm>
#include <set>

namespace tdho {

namespace {

void require_keys(const Json& node, const std::set<std::string>& allowed,
                  const std::string& where) {
  if (!node.is_object())
    throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : node.items())
    if (!allowed.count(key))
      throw ConfigError(where + ": unknown key '" + key + "'");
}

double require_number(const Json& node, const std::string& key,
                      const std::string& where) {
  if (!node.contains(key))
    throw ConfigError(where + ": missing '" + key + "'");
  if (!node[key].is_number())
    throw ConfigError(where + ": '" + key + "' must be a number");
  return node[key].get<double>();
}

double number_or(const Json& node, const std::string& key, double fallback) {
  if (!node.contains(key)) return fallback;
  if (!node[key].is_number())
    throw ConfigError("'" + key + "' must be a number");
  return node[key].get<double>();
}

std::vector<double> number_list(const Json& node, const std::string& where) {
  if (!node.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<double> out;
  out.reserve(node.size());
  for (const auto& v : node) {
    if (!v.is_number()) throw ConfigError(where + ": expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<Impulse> impulse_list(const Json& node, const std::string& where) {
  if (!node.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<Impulse> out;
  for (const auto& item : node) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() ||
        !item[1].is_number())
      throw ConfigError(where + ": impulses are [time, weight] pairs");
    out.push_back({item[0].get<double>(), item[1].get<double>()});
  }
  return out;
}

CurrentTable current_table(const Json& node, const std::string& where) {
  require_keys(node, {"times", "values"}, where);
  CurrentTable t;
  t.times = number_list(node.at("times"), where + ".times");
  t.values = number_list(node.at("values"), where + ".values");
  if (t.times.size() != t.values.size() || t.times.size() < 2)
    throw ConfigError(where + ": times/values must match, at least 2 samples");
  for (std::size_t i = 1; i < t.times.size(); ++i)
    if (!(t.times[i] > t.times[i - 1]))
      throw ConfigError(where + ": times must be strictly increasing");
  return t;
}

LocalFunction function_spec(const Json& node, bool momentum_slot,
                            const std::string& where) {
  require_keys(node, {"kind", "coefficients", "a", "b", "points"}, where);
  if (!node.contains("kind") || !node["kind"].is_string())
    throw ConfigError(where + ": missing function kind");
  std::string kind = node["kind"].get<std::string>();
  auto arg = momentum_slot ? LocalFunction::Argument::kMomentum
                           : LocalFunction::Argument::kPosition;
  try {
    if (kind == "polynomial") {
      if (!node.contains("coefficients"))
        throw ConfigError(where + ": polynomial needs 'coefficients'");
      return LocalFunction::polynomial(
          number_list(node["coefficients"], where + ".coefficients"), arg);
    }
    if (kind == "gaussian") {
      return LocalFunction::gaussian(require_number(node, "a", where),
                                     number_or(node, "b", 0.0), arg);
    }
    if (kind == "tabulated") {
      if (!node.contains("points") || !node["points"].is_array())
        throw ConfigError(where + ": tabulated needs 'points'");
      std::vector<double> xs, fs;
      for (const auto& pt : node["points"]) {
        if (!pt.is_array() || pt.size() != 2)
          throw ConfigError(where + ": points are [x, f] pairs");
        xs.push_back(pt[0].get<double>());
        fs.push_back(pt[1].get<double>());
      }
      return LocalFunction::tabulated(std::move(xs), std::move(fs), arg);
    }
  } catch (const DomainError& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": unknown function kind '" + kind + "'");
}

}  // namespace

FrequencyProfile profile_from_json(const Json& node, double t_a, double t_b) {
  require_keys(node, {"kind", "params"}, "profile");
  if (!node.contains("kind") || !node["kind"].is_string())
    throw ConfigError("profile: missing 'kind'");
  if (!node.contains("params"))
    throw ConfigError("profile: missing 'params'");
  const std::string kind = node["kind"].get<std::string>();
  const Json& p = node["params"];
  try {
    if (kind == "constant") {
      require_keys(p, {"omega"}, "profile.params");
      return FrequencyProfile::constant(
          require_number(p, "omega", "profile.params"), t_a, t_b);
    }
    if (kind == "piecewise_constant") {
      require_keys(p, {"breakpoints", "omegas"}, "profile.params");
      return FrequencyProfile::piecewise_constant(
          number_list(p.at("breakpoints"), "profile.params.breakpoints"),
          number_list(p.at("omegas"), "profile.params.omegas"), t_a, t_b);
    }
    if (kind == "polynomial") {
      require_keys(p, {"coefficients"}, "profile.params");
      return FrequencyProfile::polynomial(
          number_list(p.at("coefficients"), "profile.params.coefficients"), t_a,
          t_b);
    }
    if (kind == "tabulated") {
      require_keys(p, {"times", "omegas"}, "profile.params");
      return FrequencyProfile::tabulated(
          number_list(p.at("times"), "profile.params.times"),
          number_list(p.at("omegas"), "profile.params.omegas"), t_a, t_b);
    }
    if (kind == "omega_squared_table") {
      require_keys(p, {"times", "omega_squared"}, "profile.params");
      return FrequencyProfile::omega_squared_table(
          number_list(p.at("times"), "profile.params.times"),
          number_list(p.at("omega_squared"), "profile.params.omega_squared"),
          t_a, t_b);
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("profile: ") + e.what());
  }
  throw ConfigError("profile: unknown kind '" + kind + "'");
}

Json profile_to_json(const FrequencyProfile& profile) {
  Json params;
  switch (profile.kind()) {
    case FrequencyProfile::Kind::kConstant:
      params = {{"omega", profile.values()[0]}};
      break;
    case FrequencyProfile::Kind::kPiecewiseConstant:
      params = {{"breakpoints", profile.knots()}, {"omegas", profile.values()}};
      break;
    case FrequencyProfile::Kind::kPolynomial:
      params = {{"coefficients", profile.values()}};
      break;
    case FrequencyProfile::Kind::kTabulated:
      params = {{"times", profile.knots()}, {"omegas", profile.values()}};
      break;
    case FrequencyProfile::Kind::kOmegaSquaredTable:
      params = {{"times", profile.knots()},
                {"omega_squared", profile.values()}};
      break;
  }
  return Json{{"kind", to_string(profile.kind())}, {"params", params}};
}

std::vector<double> sample_current_table(const CurrentTable& table,
                                         const std::vector<double>& grid) {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double t = grid[i];
    if (t <= table.times.front())
      out[i] = table.values.front();
    else if (t >= table.times.back())
      out[i] = table.values.back();
    else {
      auto it = std::upper_bound(table.times.begin(), table.times.end(), t);
      std::size_t j = static_cast<std::size_t>(it - table.times.begin()) - 1;
      double s = (t - table.times[j]) / (table.times[j + 1] - table.times[j]);
      out[i] = table.values[j] + s * (table.values[j + 1] - table.values[j]);
    }
  }
  return out;
}

RunConfig parse_config(const Json& doc) {
  require_keys(doc,
               {"t_a", "t_b", "mass", "hbar", "profile", "n_steps", "greens",
                "amplitude", "correlator", "diagrams", "validate"},
               "config");
  RunConfig cfg;
  double t_a = require_number(doc, "t_a", "config");
  double t_b = require_number(doc, "t_b", "config");
  cfg.params.mass = number_or(doc, "mass", 1.0);
  cfg.params.hbar = number_or(doc, "hbar", 1.0);
  try {
    cfg.params.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (!doc.contains("profile")) throw ConfigError("config: missing 'profile'");
  cfg.profile = profile_from_json(doc["profile"], t_a, t_b);
  if (doc.contains("n_steps")) {
    if (!doc["n_steps"].is_number_unsigned() || doc["n_steps"].get<int>() < 8)
      throw ConfigError("n_steps must be an integer >= 8");
    cfg.n_steps = doc["n_steps"].get<std::size_t>();
  }

  int sections = 0;
  if (doc.contains("greens")) {
    ++sections;
    const Json& g = doc["greens"];
    require_keys(g, {"representation", "channel", "grid_points", "output"},
                 "greens");
    GreensSpec spec;
    try {
      if (g.contains("representation"))
        spec.representation =
            parse_representation(g["representation"].get<std::string>());
      if (g.contains("channel"))
        spec.channel = parse_channel(g["channel"].get<std::string>());
    } catch (const DomainError& e) {
      throw ConfigError(std::string("greens: ") + e.what());
    }
    if (g.contains("grid_points")) {
      spec.grid_points = g["grid_points"].get<int>();
      if (spec.grid_points < 2 || spec.grid_points > 20000)
        throw ConfigError("greens.grid_points out of range");
    }
    if (g.contains("output")) {
      spec.output = g["output"].get<std::string>();
      if (spec.output != "grid" && spec.output != "fundamental_pair")
        throw ConfigError("greens.output must be 'grid' or 'fundamental_pair'");
    }
    cfg.greens = spec;
  }
  if (doc.contains("amplitude")) {
    ++sections;
    const Json& a = doc["amplitude"];
    require_keys(a,
                 {"representation", "end_a", "end_b", "currents"},
                 "amplitude");
    AmplitudeSpec spec;
    if (a.contains("representation")) {
      spec.representation = a["representation"].get<std::string>();
      if (spec.representation != "x" && spec.representation != "p")
        throw ConfigError("amplitude.representation must be 'x' or 'p'");
    }
    spec.end_a = number_or(a, "end_a", 0.0);
    spec.end_b = number_or(a, "end_b", 0.0);
    if (a.contains("currents")) {
      const Json& c = a["currents"];
      require_keys(c, {"j", "k", "impulses_j", "impulses_k"},
                   "amplitude.currents");
      if (c.contains("j")) spec.smooth_j = current_table(c["j"], "currents.j");
      if (c.contains("k")) spec.smooth_k = current_table(c["k"], "currents.k");
      if (c.contains("impulses_j"))
        spec.impulses_j = impulse_list(c["impulses_j"], "currents.impulses_j");
      if (c.contains("impulses_k"))
        spec.impulses_k = impulse_list(c["impulses_k"], "currents.impulses_k");
    }
    cfg.amplitude = spec;
  }
  if (doc.contains("correlator")) {
    ++sections;
    const Json& c = doc["correlator"];
    require_keys(c,
                 {"times_x", "times_p", "functions", "mode", "omega_ref",
                  "end_a", "end_b", "representation"},
                 "correlator");
    CorrelatorSpec spec;
    if (c.contains("times_x"))
      spec.times_x = number_list(c["times_x"], "correlator.times_x");
    if (c.contains("times_p"))
      spec.times_p = number_list(c["times_p"], "correlator.times_p");
    if (!c.contains("functions") || !c["functions"].is_array())
      throw ConfigError("correlator: missing 'functions' array");
    std::size_t total = spec.times_x.size() + spec.times_p.size();
    if (c["functions"].size() != total)
      throw ConfigError("correlator: one function per insertion time required");
    for (std::size_t i = 0; i < total; ++i)
      spec.functions.push_back(function_spec(c["functions"][i],
                                             i >= spec.times_x.size(),
                                             "correlator.functions"));
    try {
      if (c.contains("mode"))
        spec.mode = parse_mode(c["mode"].get<std::string>());
      if (c.contains("representation")) {
        spec.representation =
            parse_representation(c["representation"].get<std::string>());
        if (spec.representation == GreensEvaluator::Representation::kMomentumP)
          throw ConfigError(
              "correlator.representation must be dirichlet_x or periodic");
      }
    } catch (const DomainError& e) {
      throw ConfigError(std::string("correlator: ") + e.what());
    }
    spec.omega_ref = number_or(c, "omega_ref", 1.0);
    if (!(spec.omega_ref > 0.0))
      throw ConfigError("correlator.omega_ref must be positive");
    spec.end_a = number_or(c, "end_a", 0.0);
    spec.end_b = number_or(c, "end_b", 0.0);
    cfg.correlator = spec;
  }
  if (doc.contains("diagrams")) {
    ++sections;
    const Json& d = doc["diagrams"];
    require_keys(d, {"vertex"}, "diagrams");
    if (!d.contains("vertex") || !d["vertex"].is_string())
      throw ConfigError("diagrams: missing 'vertex'");
    cfg.diagrams = DiagramsSpec{d["vertex"].get<std::string>()};
  }
  if (doc.contains("validate")) {
    ++sections;
    const Json& v = doc["validate"];
    require_keys(v, {"preset"}, "validate");
    ValidateSpec spec;
    if (v.contains("preset")) {
      spec.preset = v["preset"].get<std::string>();
      if (spec.preset != "quick" && spec.preset != "full")
        throw ConfigError("validate.preset must be 'quick' or 'full'");
    }
    cfg.validate = spec;
  }
  if (sections > 1)
    throw ConfigError("config: at most one command section allowed");
  return cfg;
}

RunConfig parse_config_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

}  // namespace tdho
