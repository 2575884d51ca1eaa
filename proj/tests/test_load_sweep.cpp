#include <doctest.h>

#include <cmath>

#include "bsmimo/errors.hpp"
#include "bsmimo/load_sweep.hpp"

using namespace bsmimo;

namespace {

MIEstimatorConfig tiny_cfg(std::uint64_t seed) {
  MIEstimatorConfig cfg;
  cfg.n_symbols = 200;
  cfg.n_channels = 200;
  cfg.seed = seed;
  cfg.chunk = 32;
  return cfg;
}

const GridSize kCoarse{31, 60};

}  // namespace

TEST_CASE("a 1x1 grid at the baseline reproduces the pipeline value exactly") {
  const ScenarioPreset preset = preset_by_name("in-hand");
  const DipoleTriadGeometry geom = default_geometry();
  const MIEstimatorConfig cfg = tiny_cfg(7);
  const LoadGrid grid = sweep_loads(preset, geom, {preset.loads.x1}, {preset.loads.x2}, 10.0,
                                    cfg, kCoarse);
  REQUIRE(grid.valid[0] == 1);
  CHECK(grid.capacity[0] == grid.baseline_capacity);
  CHECK(grid.mc_stderr[0] == grid.baseline_stderr);

  const AntennaMetrics m = analyze_scenario(preset, geom, kCoarse);
  const MIEstimate est = bpsk_mi_monte_carlo({m.eta_avg_total, m.r, m.sigma, 2}, 10.0, cfg);
  CHECK(grid.capacity[0] == est.capacity);
}

TEST_CASE("free-space sweep is symmetric across the load diagonal") {
  const ScenarioPreset preset = preset_by_name("free-space");
  const DipoleTriadGeometry geom = default_geometry();
  const std::vector<double> values = {-90.0, -40.0, 10.0, 60.0};
  const LoadGrid grid = sweep_loads(preset, geom, values, values, 10.0, tiny_cfg(11), kCoarse);

  for (std::size_t i = 0; i < values.size(); ++i) {
    // swapping equal loads collapses the two states: marked invalid, not fatal
    CHECK(grid.valid[grid.cell(i, i)] == 0);
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      REQUIRE(grid.valid[grid.cell(i, j)] == 1);
      REQUIRE(grid.valid[grid.cell(j, i)] == 1);
      const double diff = std::abs(grid.capacity[grid.cell(i, j)] - grid.capacity[grid.cell(j, i)]);
      CHECK(diff <= 3.0 * (grid.mc_stderr[grid.cell(i, j)] + grid.mc_stderr[grid.cell(j, i)]));
    }
  }
}

TEST_CASE("argmax equals an independent reverse-order scan") {
  const ScenarioPreset preset = preset_by_name("in-hand");
  const DipoleTriadGeometry geom = default_geometry();
  const std::vector<double> x1 = {-120.0, -70.0, -20.0, 30.0, 80.0};
  const std::vector<double> x2 = {-100.0, -50.0, 0.0, 50.0, 100.0};
  const LoadGrid grid = sweep_loads(preset, geom, x1, x2, 10.0, tiny_cfg(13), kCoarse);
  const BestLoads best = best_loads(grid);

  // reverse scan order with strict > keeps the first-in-scan-order winner
  double c_max = -1.0;
  std::size_t bi = 0, bj = 0;
  for (std::size_t i1 = x1.size(); i1-- > 0;)
    for (std::size_t i2 = x2.size(); i2-- > 0;) {
      const std::size_t idx = grid.cell(i1, i2);
      if (grid.valid[idx] && grid.capacity[idx] >= c_max) {
        c_max = grid.capacity[idx];
        bi = i1;
        bj = i2;
      }
    }
  CHECK(best.c_max == c_max);
  CHECK(best.i1 == bi);
  CHECK(best.i2 == bj);
}

TEST_CASE("baseline inside the grid bounds the maximum from below") {
  const ScenarioPreset preset = preset_by_name("in-hand");
  const DipoleTriadGeometry geom = default_geometry();
  const std::vector<double> x1 = {-120.0, preset.loads.x1, 0.0};
  const std::vector<double> x2 = {-20.0, preset.loads.x2, 90.0};
  const LoadGrid grid = sweep_loads(preset, geom, x1, x2, 10.0, tiny_cfg(17), kCoarse);
  const BestLoads best = best_loads(grid);
  CHECK(best.c_max >= grid.baseline_capacity);
  CHECK(best.relative_difference >= 0.0);
}

TEST_CASE("constant surface ties break in scan order") {
  ScenarioPreset dark = preset_by_name("free-space");
  dark.mask.absorption = 1.0;  // every cell carries exactly zero capacity
  const DipoleTriadGeometry geom = default_geometry();
  const LoadGrid grid =
      sweep_loads(dark, geom, {-50.0, 0.0}, {-25.0, 25.0}, 10.0, tiny_cfg(19), kCoarse);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(grid.valid[k] == 1);
    CHECK(grid.capacity[k] == 0.0);
  }
  const BestLoads best = best_loads(grid);
  CHECK(best.i1 == 0);
  CHECK(best.i2 == 0);
  CHECK(best.relative_difference == 0.0);
}

TEST_CASE("grid refinement never lowers the maximum") {
  const ScenarioPreset preset = preset_by_name("in-hand");
  const DipoleTriadGeometry geom = default_geometry();
  const MIEstimatorConfig cfg = tiny_cfg(23);
  const std::vector<double> coarse = {-100.0, -20.0, 60.0};
  const std::vector<double> dense = {-100.0, -60.0, -20.0, 20.0, 60.0};
  const BestLoads a = best_loads(sweep_loads(preset, geom, coarse, coarse, 10.0, cfg, kCoarse));
  const BestLoads b = best_loads(sweep_loads(preset, geom, dense, dense, 10.0, cfg, kCoarse));
  CHECK(b.c_max >= a.c_max);
}

TEST_CASE("a sweep with no usable cell reports AllCellsInvalid") {
  const ScenarioPreset preset = preset_by_name("free-space");
  const DipoleTriadGeometry geom = default_geometry();
  // the single cell sits on the degenerate diagonal
  const LoadGrid grid = sweep_loads(preset, geom, {15.0}, {15.0}, 10.0, tiny_cfg(29), kCoarse);
  CHECK(grid.valid[0] == 0);
  CHECK_THROWS_AS(best_loads(grid), AllCellsInvalid);
}

TEST_CASE("grids must be ascending and nonempty") {
  const ScenarioPreset preset = preset_by_name("free-space");
  const DipoleTriadGeometry geom = default_geometry();
  CHECK_THROWS_AS(sweep_loads(preset, geom, {}, {0.0}, 10.0, tiny_cfg(1), kCoarse), Error);
  CHECK_THROWS_AS(sweep_loads(preset, geom, {1.0, 1.0}, {0.0}, 10.0, tiny_cfg(1), kCoarse), Error);
}
