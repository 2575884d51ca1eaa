#include "bsmimo/load_sweep.hpp"

#include <exception>

#include "bsmimo/errors.hpp"

namespace bsmimo {

namespace {

void require_ascending(const std::vector<double>& v, const char* what) {
  if (v.empty()) throw Error(std::string(what) + " grid is empty");
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) throw Error(std::string(what) + " grid must be ascending");
}

}  // namespace

LoadGrid sweep_loads(const ScenarioPreset& preset, const DipoleTriadGeometry& geom,
                     const std::vector<double>& x1_values, const std::vector<double>& x2_values,
                     double snr_db, const MIEstimatorConfig& cfg, GridSize grid) {
  require_ascending(x1_values, "x1");
  require_ascending(x2_values, "x2");
  cfg.validate();

  LoadGrid out;
  out.x1_values = x1_values;
  out.x2_values = x2_values;
  out.snr_db = snr_db;
  out.scenario = preset.name;
  out.baseline_x1 = preset.loads.x1;
  out.baseline_x2 = preset.loads.x2;

  {
    const AntennaMetrics m = analyze_scenario(preset, geom, grid);
    const ChannelSpec spec{m.eta_avg_total, m.r, m.sigma, 2};
    const MIEstimate est = bpsk_mi_monte_carlo(spec, snr_db, cfg);
    out.baseline_capacity = est.capacity;
    out.baseline_stderr = est.std_error;
  }

  const std::int64_t n1 = std::int64_t(x1_values.size());
  const std::int64_t n2 = std::int64_t(x2_values.size());
  const std::int64_t n = n1 * n2;
  out.capacity.assign(std::size_t(n), 0.0);
  out.mc_stderr.assign(std::size_t(n), 0.0);
  out.valid.assign(std::size_t(n), 0);
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(n));

  // cells are independent; the common cfg.seed turns the argmax into a
  // paired comparison and keeps the result independent of scheduling
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t idx = 0; idx < n; ++idx) {
    ScenarioPreset cell = preset;
    cell.loads = {x1_values[std::size_t(idx / n2)], x2_values[std::size_t(idx % n2)]};
    try {
      const AntennaMetrics m = analyze_scenario(cell, geom, grid);
      const ChannelSpec spec{m.eta_avg_total, m.r, m.sigma, 2};
      const MIEstimate est = bpsk_mi_monte_carlo(spec, snr_db, cfg);
      out.capacity[std::size_t(idx)] = est.capacity;
      out.mc_stderr[std::size_t(idx)] = est.std_error;
      out.valid[std::size_t(idx)] = 1;
    } catch (const SingularNetwork&) {
      // resonant/degenerate load choice: mark the cell, keep sweeping
    } catch (const DegenerateBasis&) {
      // collapsed states (e.g. x1 == x2 in a symmetric scenario)
    } catch (...) {
      failures[std::size_t(idx)] = std::current_exception();
    }
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  return out;
}

BestLoads best_loads(const LoadGrid& grid) {
  const std::size_t n1 = grid.x1_values.size();
  const std::size_t n2 = grid.x2_values.size();
  bool found = false;
  BestLoads best;
  for (std::size_t i1 = 0; i1 < n1; ++i1) {
    for (std::size_t i2 = 0; i2 < n2; ++i2) {
      const std::size_t idx = grid.cell(i1, i2);
      if (!grid.valid[idx]) continue;
      if (!found || grid.capacity[idx] > best.c_max) {
        found = true;
        best.c_max = grid.capacity[idx];
        best.x1 = grid.x1_values[i1];
        best.x2 = grid.x2_values[i2];
        best.i1 = i1;
        best.i2 = i2;
      }
    }
  }
  if (!found) throw AllCellsInvalid("no valid cell in the load sweep");
  best.relative_difference =
      (best.c_max - grid.baseline_capacity) / grid.baseline_capacity;
  return best;
}

}  // namespace bsmimo
