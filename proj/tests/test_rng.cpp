#include <doctest.h>

#include <cmath>

#include "bsmimo/rng.hpp"

using namespace bsmimo;

TEST_CASE("substreams are reproducible and index-distinct") {
  Rng a = Rng::substream(42, 3);
  Rng b = Rng::substream(42, 3);
  Rng c = Rng::substream(42, 4);
  bool saw_difference = false;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next_u64();
    CHECK(va == b.next_u64());
    saw_difference |= (va != c.next_u64());
  }
  CHECK(saw_difference);
}

TEST_CASE("uniform01 stays in [0, 1)") {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = rng.uniform_open01();
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("normal moments") {
  Rng rng(5);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("complex normal has unit total variance and no mean") {
  Rng rng(6);
  const int n = 200000;
  std::complex<double> mean{};
  double power = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto z = rng.cnormal();
    mean += z;
    power += std::norm(z);
  }
  CHECK(std::abs(mean) / n < 0.01);
  CHECK(power / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("index draws are in range and roughly uniform") {
  Rng rng(9);
  int counts[4] = {0, 0, 0, 0};
  for (int i = 0; i < 40000; ++i) ++counts[rng.index4()];
  for (const int c : counts) CHECK(std::abs(c - 10000) < 500);
}
