#include "tdho/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "tdho/functional.hpp"
#include "tdho/lattice.hpp"
#include "tdho/wick.hpp"

namespace tdho {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open output file: " + path);
  out << content;
  if (!out) throw Error("failed writing output file: " + path);
}

std::string run_greens(const RunConfig& cfg, int threads) {
  const GreensSpec& spec = *cfg.greens;
  FundamentalPair pair = solve_fundamental(*cfg.profile, cfg.n_steps);
  std::ostringstream csv;
  if (spec.output == "fundamental_pair") {
    csv << "t,Da,Da_dot,Db,Db_dot\n";
    for (std::size_t i = 0; i < pair.grid().size(); ++i)
      csv << fmt17(pair.grid()[i]) << ',' << fmt17(pair.da()[i]) << ','
          << fmt17(pair.da_dot()[i]) << ',' << fmt17(pair.db()[i]) << ','
          << fmt17(pair.db_dot()[i]) << '\n';
    return csv.str();
  }
  GreensEvaluator evaluator(std::move(pair), spec.representation);
  const int n = spec.grid_points;
  const double t_a = cfg.profile->t_a();
  const double span = cfg.profile->duration();
  auto grid_time = [&](int i) { return t_a + span * i / (n - 1); };

  std::vector<std::vector<double>> rows(n);
  auto fill_rows = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      rows[i].resize(n);
      for (int j = 0; j < n; ++j)
        rows[i][j] = evaluator.green(spec.channel, grid_time(i), grid_time(j));
    }
  };
  if (threads > 1) {
    std::vector<std::future<void>> tasks;
    int chunk = (n + threads - 1) / threads;
    for (int begin = 0; begin < n; begin += chunk)
      tasks.push_back(std::async(std::launch::async, fill_rows, begin,
                                 std::min(n, begin + chunk)));
    for (auto& t : tasks) t.get();
  } else {
    fill_rows(0, n);
  }
  csv << "t,t2,value\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      csv << fmt17(grid_time(i)) << ',' << fmt17(grid_time(j)) << ','
          << fmt17(rows[i][j]) << '\n';
  return csv.str();
}

std::string run_amplitude(const RunConfig& cfg) {
  const AmplitudeSpec& spec = *cfg.amplitude;
  FundamentalPair pair = solve_fundamental(*cfg.profile, cfg.n_steps);
  CurrentPair currents;
  if (spec.smooth_j)
    currents.smooth_j = sample_current_table(*spec.smooth_j, pair.grid());
  if (spec.smooth_k)
    currents.smooth_k = sample_current_table(*spec.smooth_k, pair.grid());
  currents.impulses_j = spec.impulses_j;
  currents.impulses_k = spec.impulses_k;

  AmplitudeValue amp =
      spec.representation == "x"
          ? amplitude_x(pair, spec.end_a, spec.end_b, currents, cfg.params)
          : amplitude_p(pair, spec.end_a, spec.end_b, currents, cfg.params);
  Json out{{"action_re", amp.action.real()},
           {"action_im", amp.action.imag()},
           {"prefactor_re", amp.prefactor.real()},
           {"prefactor_im", amp.prefactor.imag()},
           {"value_re", amp.value.real()},
           {"value_im", amp.value.imag()}};
  return out.dump(2) + "\n";
}

std::string run_correlator(const RunConfig& cfg,
                           const std::string& mode_override) {
  CorrelatorSpec spec = *cfg.correlator;
  if (!mode_override.empty()) spec.mode = parse_mode(mode_override);
  FundamentalPair pair = solve_fundamental(*cfg.profile, cfg.n_steps);
  GreensEvaluator evaluator(pair, spec.representation);
  ClassicalPath path =
      spec.representation == GreensEvaluator::Representation::kPeriodic
          ? zero_path(pair, cfg.params)
          : classical_path_x(pair, spec.end_a, spec.end_b, cfg.params);
  SmearingDistribution dist =
      build_distribution(spec.times_x, spec.times_p, evaluator, path,
                         cfg.params, spec.omega_ref, spec.mode);
  std::complex<double> value = expectation(dist, spec.functions);
  Json out{{"value_re", value.real()},
           {"value_im", value.imag()},
           {"mode", to_string(spec.mode)},
           {"det_g", dist.det_g()},
           {"det_check_delta", dist.det_factorization_delta()}};
  return out.dump(2) + "\n";
}

std::string run_diagrams(const RunConfig& cfg, std::ostream& console) {
  const DiagramsSpec& spec = *cfg.diagrams;
  wick::OperatorWord vertex = wick::parse_vertex_word(spec.vertex);
  wick::CensusResult census = wick::connected_census(vertex, 2);
  Json entries = Json::array();
  for (const auto& entry : census.entries) {
    std::string text = std::to_string(entry.multiplicity) + " x " +
                       entry.signature.to_string();
    console << text << "\n";
    Json cross = Json::array();
    for (const auto& e : entry.signature.cross) {
      std::string tag;
      tag += e.first == wick::LetterKind::kX ? 'j' : 'k';
      tag += e.second == wick::LetterKind::kX ? 'j' : 'k';
      cross.push_back(tag);
    }
    Json loops_a = Json::array(), loops_b = Json::array();
    for (Channel c : entry.signature.loops_a) loops_a.push_back(to_string(c));
    for (Channel c : entry.signature.loops_b) loops_b.push_back(to_string(c));
    entries.push_back(Json{{"multiplicity", entry.multiplicity},
                           {"cross", cross},
                           {"loops_v1", loops_a},
                           {"loops_v2", loops_b},
                           {"text", text}});
  }
  console << "connected total " << census.connected_total() << ", disconnected "
          << census.disconnected << ", pairings " << census.total_pairings
          << "\n";
  Json out{{"vertex", spec.vertex},
           {"signatures", entries},
           {"connected_total", census.connected_total()},
           {"disconnected", census.disconnected},
           {"total_pairings", census.total_pairings}};
  return out.dump(2) + "\n";
}

std::string run_validate(const RunConfig& cfg, std::ostream& console,
                         bool& all_passed) {
  ValidationReport report = run_validation(cfg.validate->preset);
  all_passed = report.all_passed();
  Json checks = Json::array();
  for (const ValidationCheck& check : report.checks) {
    console << (check.passed ? "PASS" : "FAIL") << "  " << check.name
            << "  (value " << fmt17(check.value) << ", tol "
            << fmt17(check.tolerance) << ")\n";
    checks.push_back(Json{{"name", check.name},
                          {"passed", check.passed},
                          {"value", check.value},
                          {"tolerance", check.tolerance}});
  }
  for (const std::string& note : report.notes) console << note << "\n";
  console << (all_passed ? "all checks passed" : "some checks FAILED") << "\n";
  Json out{{"preset", cfg.validate->preset},
           {"checks", checks},
           {"notes", report.notes},
           {"all_passed", all_passed}};
  return out.dump(2) + "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"time-dependent harmonic oscillator toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_path, mode_override;
  int threads = 1;
  app.add_option("--threads", threads, "worker threads for grid evaluation")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> names{"greens", "amplitude", "correlator",
                                 "diagrams", "validate"};
  for (const std::string& name : names) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "run configuration (JSON)")
        ->required();
    sub->add_option("--out", out_path, "output artifact path")->required();
    if (name == "correlator")
      sub->add_option("--mode", mode_override,
                      "override the smearing mode (fresnel|euclidean)")
          ->check(CLI::IsMember({"fresnel", "euclidean"}));
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: config: " << e.what() << "\n";
    return 2;
  }

  try {
    RunConfig cfg = parse_config_text(read_file(config_path));
    std::string command = app.get_subcommands().front()->get_name();
    auto missing = [&](const char* section) {
      return ConfigError(std::string("config lacks the '") + section +
                         "' section required by the subcommand");
    };
    std::string artifact;
    bool ok = true;
    if (command == "greens") {
      if (!cfg.greens) throw missing("greens");
      artifact = run_greens(cfg, threads);
    } else if (command == "amplitude") {
      if (!cfg.amplitude) throw missing("amplitude");
      artifact = run_amplitude(cfg);
    } else if (command == "correlator") {
      if (!cfg.correlator) throw missing("correlator");
      artifact = run_correlator(cfg, mode_override);
    } else if (command == "diagrams") {
      if (!cfg.diagrams) throw missing("diagrams");
      artifact = run_diagrams(cfg, out);
    } else if (command == "validate") {
      if (!cfg.validate) throw missing("validate");
      artifact = run_validate(cfg, out, ok);
    }
    write_file(out_path, artifact);
    if (!ok) {
      err << "error: validation: one or more checks failed\n";
      return 3;
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "error: config: " << e.what() << "\n";
    return 2;
  } catch (const CausticError& e) {
    err << "error: caustic: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: computation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace tdho
