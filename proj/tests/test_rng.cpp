#include <doctest.h>

#include <cmath>
#include <set>

#include "abcmab/rng.hpp"

using namespace abcmab;

TEST_CASE("derived seeds separate streams and indices") {
  std::set<std::uint64_t> seen;
  for (auto s : {Stream::prior, Stream::simulator, Stream::bandit, Stream::observed})
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, s, i));
  CHECK(seen.size() == 4000);
  CHECK(derive_seed(1, Stream::prior, 3) == derive_seed(1, Stream::prior, 3));
  CHECK(derive_seed(1, Stream::prior, 3) != derive_seed(2, Stream::prior, 3));
  CHECK(derive_seed(5, 0) != derive_seed(5, 1));
  static_assert(splitmix64(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("identical seeds give identical streams") {
  Rng a(7), b(7), c(8);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    differs |= x != c.next();
  }
  CHECK(differs);
}

TEST_CASE("uniform moments and ranges") {
  Rng rng(1);
  constexpr int n = 200'000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double p = rng.uniform_pos();
    REQUIRE(p > 0.0);
    REQUIRE(p <= 1.0);
    s += u;
    s2 += u * u;
  }
  CHECK(std::abs(s / n - 0.5) < 4 * std::sqrt(1.0 / 12 / n));
  CHECK(std::abs(s2 / n - 1.0 / 3) < 0.005);
}

TEST_CASE("index is unbiased for a non-power-of-two range") {
  Rng rng(2);
  constexpr int n = 300'000;
  std::vector<int> hits(3, 0);
  for (int i = 0; i < n; ++i) ++hits[rng.index(3)];
  for (int h : hits) CHECK(std::abs(h - n / 3.0) < 4 * std::sqrt(n * (2.0 / 9)));
}

TEST_CASE("exponential and normal moments") {
  Rng rng(3);
  constexpr int n = 200'000;
  double e = 0, z = 0, z2 = 0;
  for (int i = 0; i < n; ++i) {
    e += rng.exponential(4.0);
    const double v = rng.normal();
    z += v;
    z2 += v * v;
  }
  CHECK(std::abs(e / n - 0.25) < 4 * 0.25 / std::sqrt(n));
  CHECK(std::abs(z / n) < 4 / std::sqrt(n));
  CHECK(std::abs(z2 / n - 1.0) < 4 * std::sqrt(2.0 / n));
}
