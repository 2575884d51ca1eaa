#include "bsmimo/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>

#include "bsmimo/errors.hpp"

namespace bsmimo {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

struct RawConfig {
  // section -> key -> (value, seen)
  std::map<std::string, std::map<std::string, std::string>> sections;
  std::set<std::string> consumed;  // "section.key"
  std::string path;

  bool has(const std::string& sec, const std::string& key) const {
    const auto s = sections.find(sec);
    return s != sections.end() && s->second.count(key) > 0;
  }

  std::string take(const std::string& sec, const std::string& key) {
    const auto s = sections.find(sec);
    if (s == sections.end() || !s->second.count(key))
      throw ConfigError(path + ": missing required field " + sec + "." + key);
    consumed.insert(sec + "." + key);
    return s->second.at(key);
  }

  std::string take_or(const std::string& sec, const std::string& key, const std::string& dflt) {
    if (!has(sec, key)) return dflt;
    return take(sec, key);
  }

  void reject_unconsumed() const {
    for (const auto& [sec, kv] : sections)
      for (const auto& [key, value] : kv) {
        (void)value;
        if (!consumed.count(sec + "." + key))
          throw ConfigError(path + ": unknown field " + sec + "." + key);
      }
  }
};

RawConfig read_raw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  RawConfig raw;
  raw.path = path;
  std::string line;
  std::string section;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto tokens = split_whitespace(line);
    if (tokens.empty()) continue;
    if (tokens.size() == 1 && tokens[0].size() >= 2 && tokens[0].front() == '[' &&
        tokens[0].back() == ']') {
      section = tokens[0].substr(1, tokens[0].size() - 2);
      if (raw.sections.count(section))
        throw ConfigError(path + ":" + std::to_string(lineno) + ": duplicate section [" + section + "]");
      raw.sections[section];
      continue;
    }
    if (section.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": key outside any [section]");
    if (tokens.size() < 3 || tokens[1] != "=")
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value...'");
    std::string value = tokens[2];
    for (std::size_t i = 3; i < tokens.size(); ++i) value += " " + tokens[i];
    if (raw.sections[section].count(tokens[0]))
      throw ConfigError(path + ":" + std::to_string(lineno) + ": duplicate key " + section + "." +
                        tokens[0]);
    raw.sections[section][tokens[0]] = value;
  }
  return raw;
}

double to_double(const RawConfig& raw, const std::string& field, const std::string& value) {
  try {
    return parse_double(value);
  } catch (const Error&) {
    throw ConfigError(raw.path + ": field " + field + " is not a number: '" + value + "'");
  }
}

Complex to_complex(const RawConfig& raw, const std::string& field, const std::string& value) {
  try {
    return parse_complex(value);
  } catch (const Error&) {
    throw ConfigError(raw.path + ": field " + field + " is not a complex 're+imj' value: '" +
                      value + "'");
  }
}

double take_double(RawConfig& raw, const std::string& sec, const std::string& key) {
  return to_double(raw, sec + "." + key, raw.take(sec, key));
}

}  // namespace

std::vector<double> SweepConfig::x1_grid() const {
  std::vector<double> g(static_cast<std::size_t>(x1_count));
  for (int i = 0; i < x1_count; ++i)
    g[std::size_t(i)] =
        x1_count == 1 ? x1_min : x1_min + (x1_max - x1_min) * double(i) / double(x1_count - 1);
  return g;
}

std::vector<double> SweepConfig::x2_grid() const {
  std::vector<double> g(static_cast<std::size_t>(x2_count));
  for (int i = 0; i < x2_count; ++i)
    g[std::size_t(i)] =
        x2_count == 1 ? x2_min : x2_min + (x2_max - x2_min) * double(i) / double(x2_count - 1);
  return g;
}

ScenarioPreset ScenarioConfig::to_preset() const {
  ScenarioPreset p;
  p.name = name;
  p.mask = mask;
  p.loads = loads;
  return p;
}

ScenarioConfig load_scenario_config(const std::string& path) {
  RawConfig raw = read_raw(path);
  for (const auto& [sec, kv] : raw.sections) {
    (void)kv;
    static const std::set<std::string> known = {"scenario", "geometry", "loads", "mask",
                                                "grid",     "mc",       "snr",   "sweep"};
    if (!known.count(sec)) throw ConfigError(path + ": unknown section [" + sec + "]");
  }
  ScenarioConfig cfg;

  cfg.name = raw.take("scenario", "name");
  cfg.frequency_hz = take_double(raw, "scenario", "frequency_hz");

  cfg.geometry.spacing = take_double(raw, "geometry", "spacing_m");
  cfg.geometry.element_length = take_double(raw, "geometry", "element_length_m");
  cfg.geometry.wire_radius = take_double(raw, "geometry", "wire_radius_m");
  cfg.geometry.frequency = cfg.frequency_hz;

  cfg.loads.x1 = take_double(raw, "loads", "x1_ohm");
  cfg.loads.x2 = take_double(raw, "loads", "x2_ohm");

  cfg.mask.absorption = take_double(raw, "mask", "absorption");
  cfg.mask.shadow_amplitude = take_double(raw, "mask", "shadow_amplitude");
  {
    const std::string center = raw.take("mask", "shadow_center_deg");
    const auto parts = split_whitespace(center);
    if (parts.size() != 2)
      throw ConfigError(path + ": field mask.shadow_center_deg needs two values (theta phi)");
    cfg.mask.shadow_center_theta = to_double(raw, "mask.shadow_center_deg", parts[0]) * kDegToRad;
    cfg.mask.shadow_center_phi = to_double(raw, "mask.shadow_center_deg", parts[1]) * kDegToRad;
  }
  cfg.mask.shadow_width = take_double(raw, "mask", "shadow_width_deg") * kDegToRad;
  cfg.mask.shadow_phase = take_double(raw, "mask", "shadow_phase_deg") * kDegToRad;
  {
    // reciprocal completion: only the upper triangle is configurable
    static const std::array<std::pair<int, int>, 6> upper = {
        {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};
    for (const auto& [i, j] : upper) {
      const std::string key = "coupling_delta_" + std::to_string(i) + std::to_string(j);
      const Complex v = to_complex(raw, "mask." + key, raw.take_or("mask", key, "0+0j"));
      cfg.mask.coupling_delta[std::size_t(3 * i + j)] = v;
      cfg.mask.coupling_delta[std::size_t(3 * j + i)] = v;
    }
  }

  cfg.grid.ntheta = int(take_double(raw, "grid", "ntheta"));
  cfg.grid.nphi = int(take_double(raw, "grid", "nphi"));

  cfg.mc.n_symbols = std::int64_t(take_double(raw, "mc", "n_symbols"));
  cfg.mc.n_channels = std::int64_t(take_double(raw, "mc", "n_channels"));
  cfg.mc.seed = std::uint64_t(take_double(raw, "mc", "seed"));
  cfg.mc.chunk = std::int64_t(to_double(raw, "mc.chunk", raw.take_or("mc", "chunk", "64")));

  {
    const std::string list = raw.take("snr", "snr_db");
    for (const auto& tok : split_whitespace(list))
      cfg.snr_db.push_back(to_double(raw, "snr.snr_db", tok));
    if (cfg.snr_db.empty()) throw ConfigError(path + ": snr.snr_db list is empty");
    for (std::size_t i = 1; i < cfg.snr_db.size(); ++i)
      if (!(cfg.snr_db[i] > cfg.snr_db[i - 1]))
        throw ConfigError(path + ": snr.snr_db must be strictly increasing");
  }

  if (raw.sections.count("sweep")) {
    SweepConfig sw;
    sw.x1_min = take_double(raw, "sweep", "x1_min_ohm");
    sw.x1_max = take_double(raw, "sweep", "x1_max_ohm");
    sw.x1_count = int(take_double(raw, "sweep", "x1_count"));
    sw.x2_min = take_double(raw, "sweep", "x2_min_ohm");
    sw.x2_max = take_double(raw, "sweep", "x2_max_ohm");
    sw.x2_count = int(take_double(raw, "sweep", "x2_count"));
    sw.snr_db = take_double(raw, "sweep", "snr_db");
    if (sw.x1_count < 1 || sw.x2_count < 1)
      throw ConfigError(path + ": sweep grid counts must be >= 1");
    if (sw.x1_count > 1 && !(sw.x1_max > sw.x1_min))
      throw ConfigError(path + ": sweep.x1_max_ohm must exceed sweep.x1_min_ohm");
    if (sw.x2_count > 1 && !(sw.x2_max > sw.x2_min))
      throw ConfigError(path + ": sweep.x2_max_ohm must exceed sweep.x2_min_ohm");
    cfg.sweep = sw;
  }

  raw.reject_unconsumed();

  // validate against the owning modules' invariants
  try {
    cfg.geometry.validate();
    cfg.mask.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (!std::isfinite(cfg.loads.x1) || !std::isfinite(cfg.loads.x2))
    throw ConfigError(path + ": loads must be finite");
  if (cfg.grid.ntheta < 2 || cfg.grid.nphi < 1)
    throw ConfigError(path + ": grid must be at least 2 x 1");
  try {
    cfg.mc.validate();
  } catch (const Error& e) {
    throw ConfigError(path + ": mc: " + e.what());
  }
  return cfg;
}

}  // namespace bsmimo
