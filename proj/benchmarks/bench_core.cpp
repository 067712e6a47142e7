#include <benchmark/benchmark.h>

#include "tdho/functional.hpp"
#include "tdho/lattice.hpp"
#include "tdho/smearing.hpp"
#include "tdho/wick.hpp"

namespace {

using namespace tdho;

void BM_SolveFundamental(benchmark::State& state) {
  auto profile = FrequencyProfile::polynomial({1.0, 0.3, -0.1}, 0.0, 1.0);
  for (auto _ : state) {
    auto pair = solve_fundamental(profile, state.range(0));
    benchmark::DoNotOptimize(pair.da_tb());
  }
}
BENCHMARK(BM_SolveFundamental)->Arg(256)->Arg(1024)->Arg(4096);

void BM_GreenEvaluation(benchmark::State& state) {
  auto pair = solve_fundamental(
      FrequencyProfile::polynomial({1.0, 0.3}, 0.0, 1.0), 1024);
  GreensEvaluator ev(pair, GreensEvaluator::Representation::kDirichletX);
  double t = 0.1;
  for (auto _ : state) {
    t = t < 0.9 ? t + 1e-4 : 0.1;
    benchmark::DoNotOptimize(ev.green(Channel::kJJ, t, 0.55));
  }
}
BENCHMARK(BM_GreenEvaluation);

void BM_AmplitudeWithCurrents(benchmark::State& state) {
  PhysicalParams params;
  auto pair = solve_fundamental(
      FrequencyProfile::constant(1.0, 0.0, 1.0), state.range(0));
  CurrentPair c;
  c.smooth_j.assign(pair.grid().size(), 0.0);
  for (std::size_t i = 0; i < c.smooth_j.size(); ++i)
    c.smooth_j[i] = 0.2 + 0.1 * pair.grid()[i];
  c.impulses_k = {{0.4, 0.3}};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        amplitude_x(pair, 0.3, -0.2, c, params).value);
}
BENCHMARK(BM_AmplitudeWithCurrents)->Arg(512)->Arg(2048);

void BM_ConnectedCensus(benchmark::State& state) {
  auto vertex = wick::parse_vertex_word("x^2 p^2");
  for (auto _ : state)
    benchmark::DoNotOptimize(wick::connected_census(vertex, 2).entries.size());
}
BENCHMARK(BM_ConnectedCensus);

void BM_PairingEnumeration(benchmark::State& state) {
  wick::OperatorWord word;
  for (int i = 0; i < state.range(0); ++i)
    word.push_back({wick::LetterKind::kX, 1});
  for (auto _ : state)
    benchmark::DoNotOptimize(wick::enumerate_pairings(word).size());
}
BENCHMARK(BM_PairingEnumeration)->Arg(8)->Arg(12);

void BM_LatticeLogDetRatio(benchmark::State& state) {
  auto osc = make_lattice_operator(
      FrequencyProfile::constant(1.0, 0.0, 1.0), state.range(0));
  auto fre = make_lattice_operator(free_particle_profile(0.0, 1.0),
                                   state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(lattice_log_det_ratio(osc, fre));
}
BENCHMARK(BM_LatticeLogDetRatio)->Arg(1000)->Arg(4000);

void BM_EuclideanQuadrature(benchmark::State& state) {
  PhysicalParams params;
  auto pair = solve_fundamental(
      FrequencyProfile::constant(1.0, 0.0, 1.5), 512);
  GreensEvaluator ev(pair, GreensEvaluator::Representation::kDirichletX);
  auto path = zero_path(pair, params);
  auto dist = build_distribution({0.4, 1.1}, {}, ev, path, params, 1.0,
                                 SmearingMode::kEuclidean);
  std::vector<LocalFunction> fns{LocalFunction::gaussian(0.8, 0.1),
                                 LocalFunction::gaussian(1.2, -0.3)};
  for (auto _ : state)
    benchmark::DoNotOptimize(expectation(dist, fns));
}
BENCHMARK(BM_EuclideanQuadrature);

}  // namespace

BENCHMARK_MAIN();
