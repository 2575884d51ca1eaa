#include "bsmimo/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bsmimo/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bsmimo {

namespace {

constexpr double kInvLn2 = 1.4426950408889634074;
constexpr double kInvSqrt2 = 0.7071067811865475244;

double snr_linear(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

// Hermitian PSD square root of a 2x2 matrix: (A + sqrt(det)*I) / sqrt(tr + 2*sqrt(det))
std::array<Complex, 4> psd_sqrt_2x2(const std::array<Complex, 4>& a) {
  const double det = std::max(0.0, (a[0] * a[3] - a[1] * a[2]).real());
  const double s = std::sqrt(det);
  const double tr = (a[0] + a[3]).real();
  const double denom2 = tr + 2.0 * s;
  if (denom2 <= 0.0) return {Complex{}, Complex{}, Complex{}, Complex{}};
  const double inv = 1.0 / std::sqrt(denom2);
  return {(a[0] + s) * inv, a[1] * inv, a[2] * inv, (a[3] + s) * inv};
}

struct MomentAccumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  void add(double v) {
    sum += v;
    sum_sq += v * v;
  }
};

MIEstimate reduce_moments(const std::vector<MomentAccumulator>& chunks, std::int64_t n) {
  double s1 = 0.0, s2 = 0.0;
  for (const auto& c : chunks) {  // fixed merge order: independent of workers
    s1 += c.sum;
    s2 += c.sum_sq;
  }
  MIEstimate est;
  est.capacity = s1 / double(n);
  if (n > 1) {
    const double var = std::max(0.0, (s2 - double(n) * est.capacity * est.capacity) / double(n - 1));
    est.std_error = std::sqrt(var / double(n));
  }
  return est;
}

// Per-realization mutual information of a fixed 2x2 channel A = amp*H over
// n_symbols joint-BPSK symbol draws. x_i components are +-1/sqrt(2); the
// symbol index is drawn from the top two engine bits, then two CN(0,1) noise
// samples, in that order.
double mimo_mi_realization(const std::array<Complex, 4>& a, std::int64_t n_symbols, Rng& rng) {
  // difference vectors d_ij = A*(x_i - x_j) and their squared norms
  Complex d0[4][4], d1[4][4];
  double dn[4][4];
  const double lvl = kInvSqrt2;
  for (int i = 0; i < 4; ++i) {
    const double xi0 = (i & 2) ? -lvl : lvl;
    const double xi1 = (i & 1) ? -lvl : lvl;
    for (int j = 0; j < 4; ++j) {
      const double dj0 = xi0 - ((j & 2) ? -lvl : lvl);
      const double dj1 = xi1 - ((j & 1) ? -lvl : lvl);
      d0[i][j] = dj0 * a[0] + dj1 * a[1];
      d1[i][j] = dj0 * a[2] + dj1 * a[3];
      dn[i][j] = std::norm(d0[i][j]) + std::norm(d1[i][j]);
    }
  }
  double sum_log = 0.0;
  for (std::int64_t s = 0; s < n_symbols; ++s) {
    const int i = int(rng.index4());
    const Complex n0 = rng.cnormal();
    const Complex n1 = rng.cnormal();
    double acc = 1.0;
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      const double cross = (std::conj(d0[i][j]) * n0 + std::conj(d1[i][j]) * n1).real();
      acc += std::exp(-dn[i][j] - 2.0 * cross);
    }
    sum_log += std::log(acc);
  }
  return 2.0 - (sum_log / double(n_symbols)) * kInvLn2;
}

// Same for a fixed scalar channel with unit-energy BPSK {+-1}.
double siso_mi_realization(Complex a, std::int64_t n_symbols, Rng& rng) {
  const double dn = 4.0 * std::norm(a);
  const Complex d_plus = 2.0 * a;  // x=+1 against x'=-1
  double sum_log = 0.0;
  for (std::int64_t s = 0; s < n_symbols; ++s) {
    const int bit = int(rng.index2());
    const Complex n = rng.cnormal();
    const Complex d = bit ? -d_plus : d_plus;
    const double cross = (std::conj(d) * n).real();
    sum_log += std::log1p(std::exp(-dn - 2.0 * cross));
  }
  return 1.0 - (sum_log / double(n_symbols)) * kInvLn2;
}

}  // namespace

void ChannelSpec::validate() const {
  if (!(eta >= 0.0 && eta <= 1.0)) throw Error("eta must be in [0, 1]");
  if (!(r >= 1.0) || !std::isfinite(r)) throw Error("r must be >= 1 and finite");
  if (!(std::abs(sigma) < 1.0)) throw InvalidCorrelation("|sigma| must be < 1");
  if (n_rx != 2) throw Error("only two receive branches are supported");
}

void MIEstimatorConfig::validate() const {
  if (n_symbols < 1) throw Error("n_symbols must be >= 1");
  if (n_channels < 1) throw Error("n_channels must be >= 1");
  if (chunk < 1) throw Error("chunk must be >= 1");
}

MIEstimatorConfig with_profile(MIEstimatorConfig cfg, const std::string& profile) {
  if (profile == "paper") {
    cfg.n_symbols = 10000;
    cfg.n_channels = 10000;
  } else if (profile == "ci") {
    cfg.n_symbols = 3000;
    cfg.n_channels = 3000;
  } else {
    throw Error("unknown profile: " + profile + " (expected 'paper' or 'ci')");
  }
  return cfg;
}

std::array<Complex, 4> tx_covariance(double r, Complex sigma) {
  if (!(r >= 1.0) || !std::isfinite(r)) throw Error("r must be >= 1 and finite");
  if (!(std::abs(sigma) < 1.0)) throw InvalidCorrelation("|sigma| must be < 1");
  const double l1 = 2.0 * r / (1.0 + r);
  const double l2 = 2.0 / (1.0 + r);
  const double g = std::sqrt(l1 * l2);
  return {Complex(l1, 0.0), g * sigma, g * std::conj(sigma), Complex(l2, 0.0)};
}

std::array<Complex, 4> sample_channel(const ChannelSpec& spec, Rng& rng) {
  spec.validate();
  const auto rh = psd_sqrt_2x2(tx_covariance(spec.r, spec.sigma));
  const Complex h00 = rng.cnormal(), h01 = rng.cnormal();
  const Complex h10 = rng.cnormal(), h11 = rng.cnormal();
  return {h00 * rh[0] + h01 * rh[2], h00 * rh[1] + h01 * rh[3],
          h10 * rh[0] + h11 * rh[2], h10 * rh[1] + h11 * rh[3]};
}

MIEstimate bpsk_mi_monte_carlo(const ChannelSpec& spec, double snr_db,
                               const MIEstimatorConfig& cfg) {
  spec.validate();
  cfg.validate();
  const double amp = std::sqrt(snr_linear(snr_db) * spec.eta);
  const auto rh = psd_sqrt_2x2(tx_covariance(spec.r, spec.sigma));

  const std::int64_t n_chunks = (cfg.n_channels + cfg.chunk - 1) / cfg.chunk;
  std::vector<MomentAccumulator> chunks(static_cast<std::size_t>(n_chunks));

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < n_chunks; ++c) {
    Rng rng = Rng::substream(cfg.seed, std::uint64_t(c));
    const std::int64_t lo = c * cfg.chunk;
    const std::int64_t hi = std::min(cfg.n_channels, lo + cfg.chunk);
    MomentAccumulator acc;
    for (std::int64_t rlz = lo; rlz < hi; ++rlz) {
      const Complex h00 = rng.cnormal(), h01 = rng.cnormal();
      const Complex h10 = rng.cnormal(), h11 = rng.cnormal();
      const std::array<Complex, 4> a = {amp * (h00 * rh[0] + h01 * rh[2]),
                                        amp * (h00 * rh[1] + h01 * rh[3]),
                                        amp * (h10 * rh[0] + h11 * rh[2]),
                                        amp * (h10 * rh[1] + h11 * rh[3])};
      acc.add(mimo_mi_realization(a, cfg.n_symbols, rng));
    }
    chunks[std::size_t(c)] = acc;
  }
  return reduce_moments(chunks, cfg.n_channels);
}

MIEstimate siso_bpsk_capacity(double eta, double snr_db, const MIEstimatorConfig& cfg) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw Error("eta must be in [0, 1]");
  cfg.validate();
  const double amp = std::sqrt(snr_linear(snr_db) * eta);

  const std::int64_t n_chunks = (cfg.n_channels + cfg.chunk - 1) / cfg.chunk;
  std::vector<MomentAccumulator> chunks(static_cast<std::size_t>(n_chunks));

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < n_chunks; ++c) {
    Rng rng = Rng::substream(cfg.seed, std::uint64_t(c));
    const std::int64_t lo = c * cfg.chunk;
    const std::int64_t hi = std::min(cfg.n_channels, lo + cfg.chunk);
    MomentAccumulator acc;
    for (std::int64_t rlz = lo; rlz < hi; ++rlz) {
      // two receive branches, maximum-ratio combined into one real gain
      const Complex h1 = rng.cnormal();
      const Complex h2 = rng.cnormal();
      const double gain = std::sqrt(std::norm(h1) + std::norm(h2));
      acc.add(siso_mi_realization(Complex(amp * gain, 0.0), cfg.n_symbols, rng));
    }
    chunks[std::size_t(c)] = acc;
  }
  return reduce_moments(chunks, cfg.n_channels);
}

MIEstimate siso_bpsk_mi_fixed(Complex h, double snr_db, std::int64_t n_symbols,
                              std::uint64_t seed) {
  if (n_symbols < 1) throw Error("n_symbols must be >= 1");
  const double amp = std::sqrt(snr_linear(snr_db));
  // per-symbol moments so the fixed-channel case still reports an MC error
  const Complex a = amp * h;
  const double dn = 4.0 * std::norm(a);
  const Complex d_plus = 2.0 * a;
  Rng rng(seed);
  MomentAccumulator acc;
  for (std::int64_t s = 0; s < n_symbols; ++s) {
    const int bit = int(rng.index2());
    const Complex n = rng.cnormal();
    const Complex d = bit ? -d_plus : d_plus;
    const double cross = (std::conj(d) * n).real();
    acc.add(1.0 - std::log1p(std::exp(-dn - 2.0 * cross)) * kInvLn2);
  }
  std::vector<MomentAccumulator> one{acc};
  return reduce_moments(one, n_symbols);
}

CapacityCurve capacity_curve(const ChannelSpec& spec, const std::vector<double>& snr_db,
                             const MIEstimatorConfig& cfg) {
  CapacityCurve curve;
  curve.snr_db = snr_db;
  curve.spec = spec;
  curve.config = cfg;
  curve.capacity.reserve(snr_db.size());
  curve.mc_stderr.reserve(snr_db.size());
  for (const double s : snr_db) {
    const MIEstimate est = bpsk_mi_monte_carlo(spec, s, cfg);
    curve.capacity.push_back(est.capacity);
    curve.mc_stderr.push_back(est.std_error);
  }
  return curve;
}

CapacityCurve siso_capacity_curve(double eta, const std::vector<double>& snr_db,
                                  const MIEstimatorConfig& cfg) {
  CapacityCurve curve;
  curve.snr_db = snr_db;
  curve.spec = ChannelSpec{eta, 1.0, Complex{}, 2};
  curve.config = cfg;
  for (const double s : snr_db) {
    const MIEstimate est = siso_bpsk_capacity(eta, s, cfg);
    curve.capacity.push_back(est.capacity);
    curve.mc_stderr.push_back(est.std_error);
  }
  return curve;
}

std::vector<double> multiplexing_gain(const CapacityCurve& c_mimo, const CapacityCurve& c_siso) {
  if (c_mimo.snr_db != c_siso.snr_db) throw GridMismatch("capacity curves use different SNR grids");
  std::vector<double> gain(c_mimo.snr_db.size());
  for (std::size_t i = 0; i < gain.size(); ++i) {
    if (!(c_siso.capacity[i] > 1e-6))
      throw DivisionUnderflow("SISO capacity below 1e-6 b/s/Hz at snr_db=" +
                              format_double(c_mimo.snr_db[i]));
    gain[i] = c_mimo.capacity[i] / c_siso.capacity[i];
  }
  return gain;
}

namespace {

double interp_actual(const CapacityCurve& actual, double snr_db) {
  const auto& grid = actual.snr_db;
  if (grid.empty()) throw Error("empty capacity curve");
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid[i] == snr_db) return actual.capacity[i];
  if (snr_db < grid.front() || snr_db > grid.back())
    throw OutOfRange("snr_db outside the actual curve's grid");
  std::size_t k = 1;
  while (grid[k] < snr_db) ++k;
  const double t = (snr_db - grid[k - 1]) / (grid[k] - grid[k - 1]);
  return actual.capacity[k - 1] + t * (actual.capacity[k] - actual.capacity[k - 1]);
}

}  // namespace

double multiplexing_efficiency(const CapacityCurve& actual, const CapacityCurve& ideal,
                               double snr_db) {
  if (ideal.snr_db.size() < 2) throw Error("ideal curve needs at least 2 points");
  for (std::size_t i = 1; i < ideal.snr_db.size(); ++i) {
    if (!(ideal.snr_db[i] > ideal.snr_db[i - 1])) throw Error("ideal SNR grid must be increasing");
    if (!(ideal.capacity[i] > ideal.capacity[i - 1]))
      throw Error("ideal capacity curve must be strictly increasing");
  }
  const double c_target = interp_actual(actual, snr_db);
  if (c_target < ideal.capacity.front() || c_target > ideal.capacity.back())
    throw OutOfRange("actual capacity is outside the ideal curve's sampled range");
  std::size_t k = 1;
  while (ideal.capacity[k] < c_target) ++k;
  const double t = (c_target - ideal.capacity[k - 1]) / (ideal.capacity[k] - ideal.capacity[k - 1]);
  const double snr_prime = ideal.snr_db[k - 1] + t * (ideal.snr_db[k] - ideal.snr_db[k - 1]);
  return std::pow(10.0, (snr_prime - snr_db) / 10.0);
}

SensitivityTable sensitivity_study(const ChannelSpec& reference,
                                   const std::vector<double>& snr_db,
                                   const MIEstimatorConfig& cfg, double ideal_step_db,
                                   double ideal_margin_low_db, double ideal_margin_high_db) {
  reference.validate();
  cfg.validate();
  if (snr_db.empty()) throw Error("empty SNR grid");
  if (!(ideal_step_db > 0.0)) throw Error("ideal_step_db must be positive");

  SensitivityTable table;
  table.snr_db = snr_db;

  const double lo = *std::min_element(snr_db.begin(), snr_db.end()) - ideal_margin_low_db;
  const double hi = *std::max_element(snr_db.begin(), snr_db.end()) + ideal_margin_high_db;
  std::vector<double> ideal_grid;
  for (double s = lo; s <= hi + 1e-9; s += ideal_step_db) ideal_grid.push_back(s);
  table.ideal = capacity_curve(ChannelSpec{1.0, 1.0, Complex{}, 2}, ideal_grid, cfg);

  std::vector<std::pair<std::string, ChannelSpec>> variants;
  variants.emplace_back("reference", reference);
  ChannelSpec eta2 = reference;
  eta2.eta = 2.0 * reference.eta;
  variants.emplace_back("eta_x2", eta2);
  ChannelSpec rhalf = reference;
  rhalf.r = std::max(1.0, 0.5 * reference.r);
  variants.emplace_back("r_half", rhalf);
  ChannelSpec sig3 = reference;
  sig3.sigma = reference.sigma * std::pow(10.0, -3.0 / 20.0);  // |sigma|^2 down 3 dB
  variants.emplace_back("sigma_minus_3db", sig3);

  for (auto& [name, spec] : variants) {
    spec.validate();
    SensitivityRow row;
    row.variant = name;
    row.spec = spec;
    const CapacityCurve curve = capacity_curve(spec, snr_db, cfg);
    for (const double s : snr_db)
      row.mux_efficiency.push_back(multiplexing_efficiency(curve, table.ideal, s));
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace bsmimo
