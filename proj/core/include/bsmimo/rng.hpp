#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace bsmimo {

/// Deterministic random stream. Substreams are derived from a (seed, index)
/// pair by splitmix64 mixing, so a partitioned Monte Carlo run reproduces the
/// same numbers for a given chunk index no matter which worker executes it.
/// All distributions are generated explicitly from the 64-bit engine output,
/// never through implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  static std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(derive_stream_seed(seed, index));
  }

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform in [0, 1).
  double uniform01() { return double(next_u64() >> 11) * 0x1p-53; }

  /// Uniform in (0, 1].
  double uniform_open01() { return double((next_u64() >> 11) + 1) * 0x1p-53; }

  /// Uniform over [0, n) for small n (top bits, no modulo bias).
  std::uint32_t index4() { return std::uint32_t(next_u64() >> 62); }
  std::uint32_t index2() { return std::uint32_t(next_u64() >> 63); }

  /// Standard normal, Marsaglia polar method.
  double normal() {
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    return u * std::sqrt(-2.0 * std::log(s) / s);
  }

  /// Circularly-symmetric complex normal CN(0, 1): E|z|^2 = 1.
  std::complex<double> cnormal() {
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-std::log(s) / s);  // polar pair scaled by 1/sqrt(2)
    return {u * f, v * f};
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace bsmimo
