// Command-line front door: scenario configuration, pipeline orchestration,
// and reproducible emission of the analysis tables and curves as CSV/JSON.
//
// Exit codes: 0 ok, 2 configuration/usage error, 3 pipeline error.

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "bsmimo/beamspace.hpp"
#include "bsmimo/channel.hpp"
#include "bsmimo/config.hpp"
#include "bsmimo/errors.hpp"
#include "bsmimo/load_sweep.hpp"
#include "bsmimo/pattern.hpp"
#include "bsmimo/version.hpp"

namespace {

using bsmimo::Complex;
using json = nlohmann::ordered_json;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::string profile;  // empty = use the config's counts
  std::optional<std::uint64_t> seed;
};

struct SourceOpts {
  bool use_scenario = false;
  std::string table1_row;
};

std::string sanitize(const std::string& name) {
  std::string out = name;
  for (char& c : out)
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  return out;
}

bsmimo::MIEstimatorConfig effective_mc(const bsmimo::ScenarioConfig& cfg,
                                       const CommonOpts& opts) {
  bsmimo::MIEstimatorConfig mc = cfg.mc;
  if (!opts.profile.empty()) mc = bsmimo::with_profile(mc, opts.profile);
  if (opts.seed) mc.seed = *opts.seed;
  return mc;
}

std::ofstream open_out(const CommonOpts& opts, const std::string& filename,
                       const bsmimo::MIEstimatorConfig& mc, std::string* path_out) {
  std::filesystem::create_directories(opts.out_dir);
  const std::string path = (std::filesystem::path(opts.out_dir) / filename).string();
  std::ofstream out(path, std::ios::binary);  // '\n' endings on every platform
  if (!out) throw bsmimo::Error("cannot write " + path);
  out << "# bsmimo v" << bsmimo::kVersion << " seed=" << mc.seed
      << " profile=" << (opts.profile.empty() ? "config" : opts.profile) << "\n";
  *path_out = path;
  return out;
}

double fin(double v) { return v; }  // marker for values that may be -inf

std::string fmt(double v) { return bsmimo::format_double(fin(v)); }

// JSON has no infinity; the dB column carries null there (CSV prints -inf)
json db_json(double v) {
  if (std::isinf(v)) return nullptr;
  return v;
}

bsmimo::ChannelSpec spec_from_table1_row(const std::string& row) {
  const auto fail = [&] {
    throw bsmimo::ConfigError("--table1-row expects \"eta,r,sigma_sq_db\", got '" + row + "'");
  };
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = row.find(',', start);
    parts.push_back(row.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (parts.size() != 3) fail();
  bsmimo::ChannelSpec spec;
  try {
    spec.eta = bsmimo::parse_double(parts[0]);
    spec.r = bsmimo::parse_double(parts[1]);
    spec.sigma = Complex(std::pow(10.0, bsmimo::parse_double(parts[2]) / 20.0), 0.0);
  } catch (const bsmimo::Error&) {
    fail();
  }
  try {
    spec.validate();
  } catch (const bsmimo::Error& e) {
    throw bsmimo::ConfigError(std::string("--table1-row: ") + e.what());
  }
  return spec;
}

struct ResolvedSource {
  bsmimo::ChannelSpec spec;
  std::string label;
};

ResolvedSource resolve_source(const bsmimo::ScenarioConfig& cfg, const SourceOpts& src,
                              bsmimo::GridSize grid) {
  if (src.use_scenario == !src.table1_row.empty())
    throw bsmimo::ConfigError("exactly one of --scenario or --table1-row is required");
  if (!src.table1_row.empty())
    return {spec_from_table1_row(src.table1_row), "table1-row"};
  const bsmimo::AntennaMetrics m = analyze_scenario(cfg.to_preset(), cfg.geometry, grid);
  bsmimo::ChannelSpec spec{m.eta_avg_total, m.r, m.sigma, 2};
  spec.validate();
  return {spec, sanitize(cfg.name)};
}

int cmd_analyze(const CommonOpts& opts) {
  const bsmimo::ScenarioConfig cfg = bsmimo::load_scenario_config(opts.config_path);
  const bsmimo::MIEstimatorConfig mc = effective_mc(cfg, opts);
  const bsmimo::AntennaMetrics m = analyze_scenario(cfg.to_preset(), cfg.geometry, cfg.grid);

  json j;
  j["scenario"] = cfg.name;
  j["gamma_state_i"] = {m.gamma_i.real(), m.gamma_i.imag()};
  j["gamma_state_ii"] = {m.gamma_ii.real(), m.gamma_ii.imag()};
  j["eta_rad_i"] = m.eta_rad_i;
  j["eta_rad_ii"] = m.eta_rad_ii;
  j["eta_total_i"] = m.eta_total_i;
  j["eta_total_ii"] = m.eta_total_ii;
  j["eta_avg_total"] = m.eta_avg_total;
  j["r"] = m.r;
  j["sigma_re"] = m.sigma.real();
  j["sigma_im"] = m.sigma.imag();
  j["sigma_sq_db"] = db_json(m.sigma_sq_db);

  const std::string base = "analyze_" + sanitize(cfg.name);
  std::string json_path, csv_path;
  {
    std::filesystem::create_directories(opts.out_dir);
    json_path = (std::filesystem::path(opts.out_dir) / (base + ".json")).string();
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw bsmimo::Error("cannot write " + json_path);
    out << j.dump(2) << "\n";
  }
  {
    std::ofstream out = open_out(opts, base + ".csv", mc, &csv_path);
    out << "scenario,eta_avg_total,r,sigma_sq_db,eta_total_i,eta_total_ii,eta_rad_i,eta_rad_ii,"
           "gamma_i_re,gamma_i_im,gamma_ii_re,gamma_ii_im\n";
    out << cfg.name << ',' << fmt(m.eta_avg_total) << ',' << fmt(m.r) << ','
        << fmt(m.sigma_sq_db) << ',' << fmt(m.eta_total_i) << ',' << fmt(m.eta_total_ii) << ','
        << fmt(m.eta_rad_i) << ',' << fmt(m.eta_rad_ii) << ',' << fmt(m.gamma_i.real()) << ','
        << fmt(m.gamma_i.imag()) << ',' << fmt(m.gamma_ii.real()) << ',' << fmt(m.gamma_ii.imag())
        << "\n";
  }
  std::cout << "wrote " << json_path << "\nwrote " << csv_path << "\n";
  return 0;
}

int cmd_capacity(const CommonOpts& opts, const SourceOpts& src) {
  const bsmimo::ScenarioConfig cfg = bsmimo::load_scenario_config(opts.config_path);
  const bsmimo::MIEstimatorConfig mc = effective_mc(cfg, opts);
  const ResolvedSource source = resolve_source(cfg, src, cfg.grid);
  const bsmimo::CapacityCurve curve = capacity_curve(source.spec, cfg.snr_db, mc);

  std::string path;
  std::ofstream out = open_out(opts, "capacity_" + source.label + ".csv", mc, &path);
  out << "snr_db,capacity_bps_hz,stderr,scenario,seed\n";
  for (std::size_t i = 0; i < curve.snr_db.size(); ++i)
    out << fmt(curve.snr_db[i]) << ',' << fmt(curve.capacity[i]) << ','
        << fmt(curve.mc_stderr[i]) << ',' << source.label << ',' << mc.seed << "\n";
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_gain(const CommonOpts& opts, const SourceOpts& src) {
  const bsmimo::ScenarioConfig cfg = bsmimo::load_scenario_config(opts.config_path);
  const bsmimo::MIEstimatorConfig mc = effective_mc(cfg, opts);
  const ResolvedSource source = resolve_source(cfg, src, cfg.grid);
  const bsmimo::CapacityCurve mimo = capacity_curve(source.spec, cfg.snr_db, mc);
  const bsmimo::CapacityCurve siso = siso_capacity_curve(source.spec.eta, cfg.snr_db, mc);
  const std::vector<double> gain = multiplexing_gain(mimo, siso);

  std::string path;
  std::ofstream out = open_out(opts, "gain_" + source.label + ".csv", mc, &path);
  out << "snr_db,mux_gain,capacity_mimo_bps_hz,capacity_siso_bps_hz,scenario,seed\n";
  for (std::size_t i = 0; i < gain.size(); ++i)
    out << fmt(mimo.snr_db[i]) << ',' << fmt(gain[i]) << ',' << fmt(mimo.capacity[i]) << ','
        << fmt(siso.capacity[i]) << ',' << source.label << ',' << mc.seed << "\n";
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_sensitivity(const CommonOpts& opts, const SourceOpts& src) {
  const bsmimo::ScenarioConfig cfg = bsmimo::load_scenario_config(opts.config_path);
  const bsmimo::MIEstimatorConfig mc = effective_mc(cfg, opts);
  const ResolvedSource source = resolve_source(cfg, src, cfg.grid);
  const bsmimo::SensitivityTable table = sensitivity_study(source.spec, cfg.snr_db, mc);

  std::string path;
  std::ofstream out = open_out(opts, "sensitivity_" + source.label + ".csv", mc, &path);
  out << "variant,snr_db,mux_efficiency,mux_efficiency_db\n";
  for (const auto& row : table.rows)
    for (std::size_t i = 0; i < table.snr_db.size(); ++i)
      out << row.variant << ',' << fmt(table.snr_db[i]) << ',' << fmt(row.mux_efficiency[i])
          << ',' << fmt(10.0 * std::log10(row.mux_efficiency[i])) << "\n";
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_sweep_loads(const CommonOpts& opts) {
  const bsmimo::ScenarioConfig cfg = bsmimo::load_scenario_config(opts.config_path);
  if (!cfg.sweep)
    throw bsmimo::ConfigError(opts.config_path + ": sweep-loads needs a [sweep] section");
  const bsmimo::MIEstimatorConfig mc = effective_mc(cfg, opts);
  const bsmimo::LoadGrid grid =
      sweep_loads(cfg.to_preset(), cfg.geometry, cfg.sweep->x1_grid(), cfg.sweep->x2_grid(),
                  cfg.sweep->snr_db, mc, cfg.grid);
  const bsmimo::BestLoads best = best_loads(grid);

  const std::string label = sanitize(cfg.name);
  std::string csv_path;
  {
    std::ofstream out = open_out(opts, "sweep_" + label + ".csv", mc, &csv_path);
    out << "x1_ohm,x2_ohm,capacity_bps_hz,stderr,valid\n";
    for (std::size_t i1 = 0; i1 < grid.x1_values.size(); ++i1)
      for (std::size_t i2 = 0; i2 < grid.x2_values.size(); ++i2) {
        const std::size_t idx = grid.cell(i1, i2);
        out << fmt(grid.x1_values[i1]) << ',' << fmt(grid.x2_values[i2]) << ','
            << fmt(grid.capacity[idx]) << ',' << fmt(grid.mc_stderr[idx]) << ','
            << (grid.valid[idx] ? "true" : "false") << "\n";
      }
  }
  std::string json_path;
  {
    json j;
    j["scenario"] = cfg.name;
    j["snr_db"] = grid.snr_db;
    j["x1_best"] = best.x1;
    j["x2_best"] = best.x2;
    j["c_max"] = best.c_max;
    j["c0"] = grid.baseline_capacity;
    j["x1_baseline"] = grid.baseline_x1;
    j["x2_baseline"] = grid.baseline_x2;
    j["relative_difference_pct"] = 100.0 * best.relative_difference;
    std::filesystem::create_directories(opts.out_dir);
    json_path = (std::filesystem::path(opts.out_dir) / ("sweep_" + label + ".json")).string();
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw bsmimo::Error("cannot write " + json_path);
    out << j.dump(2) << "\n";
  }
  std::cout << "wrote " << csv_path << "\nwrote " << json_path << "\n";
  return 0;
}

int cmd_ingest_pattern(const std::string& path) {
  const bsmimo::FarFieldPattern p = bsmimo::load_pattern_file(path);
  std::cout << "ok, power=" << bsmimo::format_double(radiated_power(p))
            << " ntheta=" << p.ntheta() << " nphi=" << p.nphi() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"beam-space MIMO antenna simulation toolkit"};
  app.require_subcommand(1);

  CommonOpts common;
  SourceOpts source;
  std::string pattern_path;

  const auto add_common = [&](CLI::App* sub, bool needs_config) {
    if (needs_config)
      sub->add_option("--config", common.config_path, "scenario config file")->required();
    sub->add_option("--out", common.out_dir, "output directory");
    sub->add_option("--seed", common.seed, "override the config's Monte-Carlo seed");
    sub->add_option("--profile", common.profile, "Monte-Carlo sizing profile")
        ->check(CLI::IsMember({"paper", "ci"}));
  };
  const auto add_source = [&](CLI::App* sub) {
    sub->add_flag("--scenario", source.use_scenario,
                  "drive the channel from the config's scenario pipeline");
    sub->add_option("--table1-row", source.table1_row,
                    "drive the channel directly from an \"eta,r,sigma_sq_db\" triplet");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "antenna metrics for one scenario");
  add_common(analyze, true);
  CLI::App* capacity = app.add_subcommand("capacity", "BPSK capacity versus transmit SNR");
  add_common(capacity, true);
  add_source(capacity);
  CLI::App* gain = app.add_subcommand("gain", "multiplexing gain versus transmit SNR");
  add_common(gain, true);
  add_source(gain);
  CLI::App* sensitivity =
      app.add_subcommand("sensitivity", "multiplexing-efficiency sensitivity per parameter");
  add_common(sensitivity, true);
  add_source(sensitivity);
  CLI::App* sweep = app.add_subcommand("sweep-loads", "2D reactive-load capacity sweep");
  add_common(sweep, true);
  CLI::App* ingest = app.add_subcommand("ingest-pattern", "validate a far-field pattern file");
  ingest->add_option("path", pattern_path, "pattern CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(analyze)) return cmd_analyze(common);
    if (app.got_subcommand(capacity)) return cmd_capacity(common, source);
    if (app.got_subcommand(gain)) return cmd_gain(common, source);
    if (app.got_subcommand(sensitivity)) return cmd_sensitivity(common, source);
    if (app.got_subcommand(sweep)) return cmd_sweep_loads(common);
    if (app.got_subcommand(ingest)) return cmd_ingest_pattern(pattern_path);
  } catch (const bsmimo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const bsmimo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
