#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bsmimo/channel.hpp"
#include "bsmimo/errors.hpp"
#include "oracles.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace bsmimo;

namespace {

MIEstimatorConfig quick_cfg(std::int64_t n, std::uint64_t seed) {
  MIEstimatorConfig cfg;
  cfg.n_symbols = n;
  cfg.n_channels = n;
  cfg.seed = seed;
  cfg.chunk = 64;
  return cfg;
}

}  // namespace

TEST_CASE("tx_covariance structure") {
  SUBCASE("balanced uncorrelated is the identity") {
    const auto r = tx_covariance(1.0, Complex{});
    CHECK(r[0] == Complex(1.0, 0.0));
    CHECK(r[1] == Complex{});
    CHECK(r[2] == Complex{});
    CHECK(r[3] == Complex(1.0, 0.0));
  }
  SUBCASE("trace is always 2 and eigenvalues match the closed form") {
    for (const double rr : {1.0, 1.3, 2.0, 4.1}) {
      for (const double mag : {0.0, 0.3, 0.457, 0.9}) {
        const Complex sigma = std::polar(mag, 0.7);
        const auto r = tx_covariance(rr, sigma);
        CHECK((r[0] + r[3]).real() == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(r[1] == std::conj(r[2]));
        const auto eig = oracles::herm2_eigenvalues(r);
        CHECK(eig[0] >= -1e-12);  // positive semidefinite
        // determinant route: l1*l2*(1-|sigma|^2)
        const double l1 = 2.0 * rr / (1.0 + rr);
        const double l2 = 2.0 / (1.0 + rr);
        CHECK(eig[0] * eig[1] ==
              doctest::Approx(l1 * l2 * (1.0 - mag * mag)).epsilon(1e-10));
      }
    }
  }
  SUBCASE("near-unity correlation approaches rank one") {
    const auto r = tx_covariance(1.0, Complex(0.9999, 0.0));
    const auto eig = oracles::herm2_eigenvalues(r);
    CHECK(eig[0] < 2e-4);
    CHECK(eig[1] > 1.99);
  }
  SUBCASE("invalid arguments") {
    CHECK_THROWS_AS(tx_covariance(1.0, Complex(1.0, 0.0)), InvalidCorrelation);
    CHECK_THROWS_AS(tx_covariance(0.5, Complex{}), Error);
  }
}

TEST_CASE("sample_channel statistics and determinism") {
  SUBCASE("fixed seed reproduces the sequence bit-identically") {
    const ChannelSpec spec{1.0, 2.0, Complex(0.4, 0.2), 2};
    Rng a(99), b(99);
    for (int i = 0; i < 100; ++i) {
      const auto ha = sample_channel(spec, a);
      const auto hb = sample_channel(spec, b);
      for (int k = 0; k < 4; ++k) CHECK(ha[std::size_t(k)] == hb[std::size_t(k)]);
    }
  }
  SUBCASE("white spec gives identity entry covariance at 1e6 draws") {
    const ChannelSpec spec{1.0, 1.0, Complex{}, 2};
    Rng rng(123);
    double var[4] = {0, 0, 0, 0};
    Complex cross{};
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
      const auto h = sample_channel(spec, rng);
      for (int k = 0; k < 4; ++k) var[k] += std::norm(h[std::size_t(k)]);
      cross += h[0] * std::conj(h[1]);  // same-row, different tx columns
    }
    for (int k = 0; k < 4; ++k) CHECK(var[k] / n == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::abs(cross) / n < 0.02);
  }
  SUBCASE("strong correlation shows up in the columns") {
    const ChannelSpec spec{1.0, 1.0, Complex(0.999, 0.0), 2};
    Rng rng(321);
    Complex cross{};
    double p0 = 0.0, p1 = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
      const auto h = sample_channel(spec, rng);
      cross += h[0] * std::conj(h[1]) + h[2] * std::conj(h[3]);
      p0 += std::norm(h[0]) + std::norm(h[2]);
      p1 += std::norm(h[1]) + std::norm(h[3]);
    }
    CHECK(std::abs(cross) / std::sqrt(p0 * p1) == doctest::Approx(0.999).epsilon(0.01));
  }
}

TEST_CASE("MI estimator against quadrature and limits") {
  SUBCASE("fixed-channel SISO matches Gauss-Hermite quadrature") {
    for (const double snr : {0.0, 5.0, 10.0}) {
      const MIEstimate est = siso_bpsk_mi_fixed(Complex(1.0, 0.0), snr, 100000, 77);
      const double ref = oracles::bpsk_mi_quadrature(std::pow(10.0, snr / 10.0));
      CHECK(std::abs(est.capacity - ref) < 0.02);
    }
  }
  SUBCASE("no signal means no information") {
    const ChannelSpec spec{1.0, 1.0, Complex{}, 2};
    const MIEstimate est = bpsk_mi_monte_carlo(spec, -60.0, quick_cfg(500, 3));
    CHECK(std::abs(est.capacity) < 3.0 * est.std_error + 0.003);
  }
  SUBCASE("zero efficiency gives exactly zero") {
    const ChannelSpec spec{0.0, 1.0, Complex{}, 2};
    const MIEstimate est = bpsk_mi_monte_carlo(spec, 10.0, quick_cfg(200, 3));
    CHECK(est.capacity == 0.0);
    CHECK(est.std_error == 0.0);
  }
  SUBCASE("high SNR saturates both streams") {
    const ChannelSpec spec{1.0, 1.0, Complex{}, 2};
    const MIEstimate est = bpsk_mi_monte_carlo(spec, 30.0, quick_cfg(1500, 5));
    CHECK(est.capacity >= 1.95);
    CHECK(est.capacity <= 2.0 + 3.0 * est.std_error);
  }
  SUBCASE("efficiency acts as an SNR shift") {
    const ChannelSpec half{0.5, 1.7, Complex(0.2, 0.1), 2};
    const ChannelSpec full{1.0, 1.7, Complex(0.2, 0.1), 2};
    const MIEstimate a = bpsk_mi_monte_carlo(half, 8.0, quick_cfg(2000, 11));
    const MIEstimate b = bpsk_mi_monte_carlo(full, 8.0 + 10.0 * std::log10(0.5), quick_cfg(2000, 11));
    CHECK(std::abs(a.capacity - b.capacity) < 3.0 * (a.std_error + b.std_error) + 1e-6);
  }
  SUBCASE("capacity is nondecreasing in SNR within MC slack") {
    const ChannelSpec spec{0.4, 1.6, Complex(0.11, 0.0), 2};
    const CapacityCurve curve = capacity_curve(spec, {0.0, 10.0, 20.0, 30.0}, quick_cfg(1200, 13));
    for (std::size_t i = 1; i < curve.capacity.size(); ++i)
      CHECK(curve.capacity[i] >= curve.capacity[i - 1] -
                                     3.0 * (curve.mc_stderr[i] + curve.mc_stderr[i - 1]));
  }
  SUBCASE("capacity is nonincreasing in |sigma|") {
    double prev = 3.0;
    for (const double mag : {0.0, 0.3, 0.6, 0.9}) {
      const ChannelSpec spec{0.5, 1.0, Complex(mag, 0.0), 2};
      const MIEstimate est = bpsk_mi_monte_carlo(spec, 10.0, quick_cfg(2500, 17));
      CHECK(est.capacity <= prev + 3.0 * est.std_error);
      prev = est.capacity;
    }
  }
}

TEST_CASE("estimates are bit-identical across worker counts") {
  const ChannelSpec spec{0.6, 2.2, Complex(0.3, -0.1), 2};
  const MIEstimatorConfig cfg = quick_cfg(700, 555);
#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
#endif
  const MIEstimate a = bpsk_mi_monte_carlo(spec, 12.0, cfg);
  const MIEstimate sa = siso_bpsk_capacity(0.6, 12.0, cfg);
#ifdef _OPENMP
  omp_set_num_threads(2);
#endif
  const MIEstimate b = bpsk_mi_monte_carlo(spec, 12.0, cfg);
  const MIEstimate sb = siso_bpsk_capacity(0.6, 12.0, cfg);
#ifdef _OPENMP
  omp_set_num_threads(saved);
#endif
  CHECK(a.capacity == b.capacity);
  CHECK(a.std_error == b.std_error);
  CHECK(sa.capacity == sb.capacity);
}

TEST_CASE("SISO reference estimator") {
  SUBCASE("saturates at one bit") {
    const MIEstimate est = siso_bpsk_capacity(1.0, 40.0, quick_cfg(1000, 23));
    CHECK(est.capacity > 0.995);
    CHECK(est.capacity <= 1.0 + 3.0 * est.std_error);
  }
  SUBCASE("halved efficiency equals a 3 dB shift") {
    const MIEstimate a = siso_bpsk_capacity(0.5, 10.0, quick_cfg(3000, 29));
    const MIEstimate b = siso_bpsk_capacity(1.0, 10.0 - 3.0102999566398119, quick_cfg(3000, 29));
    CHECK(std::abs(a.capacity - b.capacity) < 3.0 * (a.std_error + b.std_error) + 1e-9);
  }
  SUBCASE("matches the quadrature oracle over the fading distribution") {
    const MIEstimate est = siso_bpsk_capacity(1.0, 10.0, quick_cfg(3000, 31));
    const double ref = oracles::siso_rayleigh_bpsk_quadrature(10.0);
    CHECK(std::abs(est.capacity - ref) < 0.01);
  }
}

TEST_CASE("multiplexing gain") {
  const std::vector<double> grid = {0.0, 10.0, 20.0, 30.0};
  const MIEstimatorConfig cfg = quick_cfg(1500, 37);
  const ChannelSpec ideal{1.0, 1.0, Complex{}, 2};
  const CapacityCurve mimo = capacity_curve(ideal, grid, cfg);
  const CapacityCurve siso = siso_capacity_curve(1.0, grid, cfg);

  SUBCASE("ideal system doubles the stream count at high SNR") {
    const auto gain = multiplexing_gain(mimo, siso);
    CHECK(gain.back() >= 1.9);
    CHECK(gain.back() <= 2.05);
  }
  SUBCASE("identical curves give unity") {
    const auto gain = multiplexing_gain(mimo, mimo);
    for (const double g : gain) CHECK(g == 1.0);
  }
  SUBCASE("grid mismatch and underflow") {
    CapacityCurve other = siso;
    other.snr_db[0] += 1.0;
    CHECK_THROWS_AS(multiplexing_gain(mimo, other), GridMismatch);
    CapacityCurve tiny = siso;
    tiny.capacity[0] = 1e-9;
    CHECK_THROWS_AS(multiplexing_gain(mimo, tiny), DivisionUnderflow);
  }
}

TEST_CASE("multiplexing efficiency") {
  const MIEstimatorConfig cfg = quick_cfg(2500, 41);
  std::vector<double> fine;
  for (double s = -25.0; s <= 20.0; s += 0.5) fine.push_back(s);
  const CapacityCurve ideal = capacity_curve(ChannelSpec{1.0, 1.0, Complex{}, 2}, fine, cfg);

  SUBCASE("an antenna identical to the reference has unit efficiency") {
    CHECK(multiplexing_efficiency(ideal, ideal, 0.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(multiplexing_efficiency(ideal, ideal, 10.0) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("in the linear regime efficiency tends to eta") {
    const double eta = 0.25;
    const CapacityCurve actual =
        capacity_curve(ChannelSpec{eta, 1.0, Complex{}, 2}, {-10.0}, cfg);
    const double eff = multiplexing_efficiency(actual, ideal, -10.0);
    CHECK(std::abs(eff - eta) / eta < 0.10);
  }
  SUBCASE("out-of-range capacity is reported") {
    CapacityCurve high = capacity_curve(ChannelSpec{1.0, 1.0, Complex{}, 2}, {35.0}, cfg);
    CapacityCurve short_ideal = ideal;
    short_ideal.snr_db.resize(10);
    short_ideal.capacity.resize(10);
    short_ideal.mc_stderr.resize(10);
    CHECK_THROWS_AS(multiplexing_efficiency(high, short_ideal, 35.0), OutOfRange);
  }
}

TEST_CASE("sensitivity study structure and dominant knob") {
  const ChannelSpec reference{0.13, 4.1, Complex(std::pow(10.0, -6.8 / 20.0), 0.0), 2};
  const MIEstimatorConfig cfg = quick_cfg(800, 43);
  const SensitivityTable table = sensitivity_study(reference, {10.0}, cfg);
  REQUIRE(table.rows.size() == 4);
  CHECK(table.rows[0].variant == "reference");
  CHECK(table.rows[1].variant == "eta_x2");
  CHECK(table.rows[2].variant == "r_half");
  CHECK(table.rows[3].variant == "sigma_minus_3db");
  CHECK(table.rows[1].spec.eta == doctest::Approx(0.26));
  CHECK(table.rows[2].spec.r == doctest::Approx(2.05));
  CHECK(std::abs(table.rows[3].spec.sigma) ==
        doctest::Approx(std::pow(10.0, -9.8 / 20.0)).epsilon(1e-12));
  const double ref_eff = table.rows[0].mux_efficiency[0];
  const double eta_eff = table.rows[1].mux_efficiency[0];
  const double r_eff = table.rows[2].mux_efficiency[0];
  CHECK(eta_eff - ref_eff > r_eff - ref_eff);
  CHECK(r_eff - ref_eff > 0.0);

  SUBCASE("references that cannot double eta are rejected") {
    CHECK_THROWS_AS(sensitivity_study(ChannelSpec{0.8, 1.5, Complex{}, 2}, {10.0}, cfg), Error);
  }
}

TEST_CASE("estimator configuration validation") {
  MIEstimatorConfig cfg = quick_cfg(10, 1);
  cfg.n_symbols = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = quick_cfg(10, 1);
  cfg.chunk = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  CHECK_THROWS_AS(with_profile(quick_cfg(10, 1), "fast"), Error);
  CHECK(with_profile(quick_cfg(10, 1), "paper").n_channels == 10000);
  CHECK(with_profile(quick_cfg(10, 1), "ci").n_channels == 3000);
  const ChannelSpec bad_rx{1.0, 1.0, Complex{}, 3};
  CHECK_THROWS_AS(bad_rx.validate(), Error);
}
