#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsmimo/channel.hpp"
#include "bsmimo/dipole.hpp"
#include "bsmimo/phantom.hpp"

namespace bsmimo {

/// Optional [sweep] section for the load-sweep command.
struct SweepConfig {
  double x1_min = 0.0, x1_max = 0.0;
  double x2_min = 0.0, x2_max = 0.0;
  int x1_count = 0, x2_count = 0;
  double snr_db = 10.0;

  std::vector<double> x1_grid() const;
  std::vector<double> x2_grid() const;
};

/// Parsed scenario configuration. The file is a strict key-value format with
/// [section] headers and '#' comments; unknown sections or keys are rejected
/// and physics-bearing fields have no silent defaults.
struct ScenarioConfig {
  std::string name;
  double frequency_hz = 0.0;
  DipoleTriadGeometry geometry;  // frequency copied from frequency_hz
  ReactiveLoadPair loads;
  PhantomMask mask;
  GridSize grid;
  MIEstimatorConfig mc;
  std::vector<double> snr_db;
  std::optional<SweepConfig> sweep;

  ScenarioPreset to_preset() const;
};

/// Loads and validates a config file. Throws ConfigError naming the field
/// path (e.g. "mask.absorption") on any schema or range violation.
ScenarioConfig load_scenario_config(const std::string& path);

}  // namespace bsmimo
