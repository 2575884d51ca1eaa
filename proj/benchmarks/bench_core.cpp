#include <benchmark/benchmark.h>

#include "bsmimo/beamspace.hpp"
#include "bsmimo/channel.hpp"
#include "bsmimo/dipole.hpp"

using namespace bsmimo;

static void BM_TriadImpedance(benchmark::State& state) {
  const DipoleTriadGeometry geom = default_geometry();
  for (auto _ : state) {
    auto z = triad_impedance_matrix(geom);
    benchmark::DoNotOptimize(z);
  }
}
BENCHMARK(BM_TriadImpedance);

static void BM_RadiatedPower(benchmark::State& state) {
  const auto pats = embedded_patterns(default_geometry(), {181, 360});
  for (auto _ : state) {
    benchmark::DoNotOptimize(radiated_power(pats[0]));
  }
}
BENCHMARK(BM_RadiatedPower);

static void BM_AnalyzeScenario(benchmark::State& state) {
  const DipoleTriadGeometry geom = default_geometry();
  const ScenarioPreset preset = preset_by_name("in-hand");
  const int n = int(state.range(0));
  for (auto _ : state) {
    auto m = analyze_scenario(preset, geom, {n, 2 * n});
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_AnalyzeScenario)->Arg(31)->Arg(91)->Arg(181);

static void BM_BpskMiSymbols(benchmark::State& state) {
  const ChannelSpec spec{0.4, 1.6, Complex(0.11, 0.0), 2};
  MIEstimatorConfig cfg;
  cfg.n_symbols = state.range(0);
  cfg.n_channels = 256;
  cfg.seed = 7;
  cfg.chunk = 64;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bpsk_mi_monte_carlo(spec, 10.0, cfg));
  }
  state.SetItemsProcessed(state.iterations() * cfg.n_symbols * cfg.n_channels);
}
BENCHMARK(BM_BpskMiSymbols)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
