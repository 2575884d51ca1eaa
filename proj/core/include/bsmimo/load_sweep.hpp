#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bsmimo/beamspace.hpp"
#include "bsmimo/channel.hpp"

namespace bsmimo {

/// 2D capacity map over the reactive load pair for one scenario at one SNR.
struct LoadGrid {
  std::vector<double> x1_values;  // ohms, ascending
  std::vector<double> x2_values;  // ohms, ascending
  std::vector<double> capacity;   // row-major [i1 * n2 + i2], b/s/Hz
  std::vector<double> mc_stderr;
  std::vector<std::uint8_t> valid;  // 0 when the cell's network is singular/degenerate
  double snr_db = 0.0;
  std::string scenario;
  double baseline_x1 = 0.0;
  double baseline_x2 = 0.0;
  double baseline_capacity = 0.0;
  double baseline_stderr = 0.0;

  std::size_t cell(std::size_t i1, std::size_t i2) const { return i1 * x2_values.size() + i2; }
};

/// Evaluates the full pipeline (analyze_scenario -> ChannelSpec -> BPSK MC)
/// for every load pair on the grid, with one common seed across cells so the
/// comparison between cells is paired. Cells whose terminated network is
/// singular, or whose basis collapses (x1 == x2 in a symmetric scenario), are
/// marked invalid rather than aborting the sweep. The baseline entry is the
/// preset's own load pair.
LoadGrid sweep_loads(const ScenarioPreset& preset, const DipoleTriadGeometry& geom,
                     const std::vector<double>& x1_values,
                     const std::vector<double>& x2_values, double snr_db,
                     const MIEstimatorConfig& cfg, GridSize grid = {181, 360});

struct BestLoads {
  double x1 = 0.0;
  double x2 = 0.0;
  double c_max = 0.0;
  double relative_difference = 0.0;  // (c_max - c0) / c0
  std::size_t i1 = 0;
  std::size_t i2 = 0;
};

/// Argmax over valid cells, first-in-scan-order tie-break (row-major).
/// Throws AllCellsInvalid when nothing evaluated.
BestLoads best_loads(const LoadGrid& grid);

}  // namespace bsmimo
