#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace abcmab {

/// A series on a strictly increasing time grid. Values are stored as doubles:
/// SSA output is integer-valued counts, other simulators may emit reals.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  bool empty() const noexcept { return values.empty(); }
  std::span<const double> series() const noexcept { return values; }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Uniform grid of n points on [0, t_end]; n == 1 yields {0}.
std::vector<double> uniform_grid(double t_end, std::size_t n);

/// Throws InputError if lengths differ or times are not strictly increasing.
void validate(const Trajectory& y);

/// CSV with header `time,value`.
void write_csv(std::ostream& out, const Trajectory& y);
Trajectory read_csv(std::istream& in);

}  // namespace abcmab
