#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace abcmab {

/// SplitMix64 finalizer. Used to turn (seed, stream, counter) triples into
/// well-mixed 64-bit seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Named substreams of a run seed. Values are part of the on-disk
/// reproducibility contract; do not renumber.
enum class Stream : std::uint64_t {
  prior = 1,
  simulator = 2,
  bandit = 3,
  observed = 4,
  calibration = 5,
  pool = 6,
  repetition = 7,
  baseline = 8,
};

/// Counter-based seed derivation: seed for element `index` of `stream`.
constexpr std::uint64_t derive_seed(std::uint64_t base, Stream stream,
                                    std::uint64_t index = 0) noexcept {
  const auto s = splitmix64(base ^ splitmix64(static_cast<std::uint64_t>(stream)));
  return splitmix64(s + splitmix64(index + 0x632be59bd9b4e019ULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(base) ^ (index * 0xd1342543de82ef95ULL + 1));
}

/// 64-bit Mersenne Twister with distribution helpers implemented here rather
/// than via <random> distributions, whose output is library-specific. This
/// keeps exported runs byte-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_pos() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Unbiased integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);

  /// Exponential with the given rate.
  double exponential(double rate);

  /// Standard normal (Marsaglia polar method).
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace abcmab
