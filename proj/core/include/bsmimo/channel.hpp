#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "bsmimo/rng.hpp"
#include "bsmimo/text_format.hpp"

namespace bsmimo {

/// Kronecker narrowband flat-fading channel driven by the three antenna
/// metrics: eta scales the transmit power, (r, sigma) color the transmit
/// side, the two receive branches are uncorrelated.
struct ChannelSpec {
  double eta = 1.0;    // average total efficiency, in [0, 1]
  double r = 1.0;      // basis power imbalance ratio, >= 1
  Complex sigma{};     // complex basis correlation, |sigma| < 1
  int n_rx = 2;

  void validate() const;  // throws Error / InvalidCorrelation
};

/// Monte-Carlo sizing. Channel realizations are partitioned into fixed-size
/// chunks; chunk c draws from the substream derived from (seed, c), so the
/// merged estimate is bit-identical for any worker count.
struct MIEstimatorConfig {
  std::int64_t n_symbols = 10000;   // symbol draws per channel realization
  std::int64_t n_channels = 10000;  // channel realizations
  std::uint64_t seed = 1;
  std::int64_t chunk = 64;  // realizations per RNG substream

  void validate() const;  // throws Error
};

/// MC profiles named by the CLI: "paper" is 1e4 x 1e4, "ci" is 3e3 x 3e3.
MIEstimatorConfig with_profile(MIEstimatorConfig cfg, const std::string& profile);

struct MIEstimate {
  double capacity = 0.0;   // b/s/Hz
  double std_error = 0.0;  // Monte-Carlo standard error of the mean
};

struct CapacityCurve {
  std::vector<double> snr_db;
  std::vector<double> capacity;
  std::vector<double> mc_stderr;
  ChannelSpec spec;
  MIEstimatorConfig config;
};

/// Transmit covariance R = Lambda^{1/2} C Lambda^{1/2} with
/// Lambda = diag(2r/(1+r), 2/(1+r)) and C = [[1, sigma], [conj(sigma), 1]].
/// Row-major 2x2; trace(R) == 2 and R is positive semidefinite.
std::array<Complex, 4> tx_covariance(double r, Complex sigma);

/// One Kronecker draw H = H_w * R^{1/2}, H_w i.i.d. CN(0,1), row-major.
/// H_w entries are drawn row-major (h00, h01, h10, h11).
std::array<Complex, 4> sample_channel(const ChannelSpec& spec, Rng& rng);

/// Monte-Carlo mutual information of two BPSK streams (joint ML receiver):
/// y = sqrt(gamma*eta) * H * x + n with x uniform over {+-1/sqrt(2)}^2 and n
/// i.i.d. CN(0,1) per branch; gamma = 10^(snr_db/10) is the transmit SNR
/// (total transmit power over per-branch noise power).
MIEstimate bpsk_mi_monte_carlo(const ChannelSpec& spec, double snr_db,
                               const MIEstimatorConfig& cfg);

/// Reference SISO link with the same average total efficiency: a single
/// unit-energy BPSK stream received by the same two uncorrelated branches
/// with maximum-ratio combining, i.e. BPSK mutual information at effective
/// SNR gamma*eta*(|h1|^2 + |h2|^2), h_i ~ CN(0,1). Capacity is in [0, 1].
MIEstimate siso_bpsk_capacity(double eta, double snr_db, const MIEstimatorConfig& cfg);

/// Fixed-channel (no fading) single-stream BPSK mutual information; the
/// degenerate 1x1 case of the estimator, used to pin it against quadrature.
MIEstimate siso_bpsk_mi_fixed(Complex h, double snr_db, std::int64_t n_symbols,
                              std::uint64_t seed);

CapacityCurve capacity_curve(const ChannelSpec& spec, const std::vector<double>& snr_db,
                             const MIEstimatorConfig& cfg);
CapacityCurve siso_capacity_curve(double eta, const std::vector<double>& snr_db,
                                  const MIEstimatorConfig& cfg);

/// Pointwise MIMO/SISO capacity ratio. Throws GridMismatch on different SNR
/// grids and DivisionUnderflow where the SISO capacity is below 1e-6.
std::vector<double> multiplexing_gain(const CapacityCurve& c_mimo,
                                      const CapacityCurve& c_siso);

/// SNR ratio at which the ideal curve reaches the actual curve's capacity at
/// snr_db: finds snr' with C_ideal(snr') == C_actual(snr_db) by monotone
/// piecewise-linear interpolation and returns 10^((snr' - snr_db)/10).
/// Throws OutOfRange when the needed capacity is not covered by the ideal
/// curve's samples, Error when the ideal curve is not strictly increasing.
double multiplexing_efficiency(const CapacityCurve& actual, const CapacityCurve& ideal,
                               double snr_db);

struct SensitivityRow {
  std::string variant;  // "reference", "eta_x2", "r_half", "sigma_minus_3db"
  ChannelSpec spec;
  std::vector<double> mux_efficiency;  // per SNR grid point
};

struct SensitivityTable {
  std::vector<double> snr_db;
  std::vector<SensitivityRow> rows;
  CapacityCurve ideal;  // the ideal reference curve used for inversion
};

/// Changes one antenna parameter at a time from the reference: doubled
/// efficiency, halved imbalance (floored at 1), correlation power reduced by
/// 3 dB. Every row shares the reference's seed so the comparisons are paired.
SensitivityTable sensitivity_study(const ChannelSpec& reference,
                                   const std::vector<double>& snr_db,
                                   const MIEstimatorConfig& cfg,
                                   double ideal_step_db = 0.5,
                                   double ideal_margin_low_db = 20.0,
                                   double ideal_margin_high_db = 6.0);

}  // namespace bsmimo
