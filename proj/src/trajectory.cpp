#include "abcmab/trajectory.hpp"

#include <fmt/format.h>

#include <istream>
#include <ostream>
#include <string>

#include "abcmab/errors.hpp"

namespace abcmab {

std::vector<double> uniform_grid(double t_end, std::size_t n) {
  if (n == 0) throw InputError("grid needs at least one point");
  std::vector<double> grid(n, 0.0);
  if (n == 1) return grid;
  if (!(t_end > 0.0)) throw InputError("t_end must be positive");
  const double step = t_end / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) grid[i] = step * static_cast<double>(i);
  grid.back() = t_end;
  return grid;
}

void validate(const Trajectory& y) {
  if (y.times.size() != y.values.size())
    throw InputError(fmt::format("trajectory has {} times but {} values", y.times.size(),
                                 y.values.size()));
  for (std::size_t i = 1; i < y.times.size(); ++i)
    if (!(y.times[i] > y.times[i - 1])) throw InputError("trajectory times not strictly increasing");
}

void write_csv(std::ostream& out, const Trajectory& y) {
  out << "time,value\n";
  for (std::size_t i = 0; i < y.size(); ++i) out << fmt::format("{},{}\n", y.times[i], y.values[i]);
}

Trajectory read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("time,value", 0) != 0)
    throw InputError("trajectory CSV must start with header `time,value`");
  Trajectory y;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw InputError("malformed trajectory row: " + line);
    try {
      y.times.push_back(std::stod(line.substr(0, comma)));
      y.values.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::logic_error&) {
      throw InputError("malformed trajectory row: " + line);
    }
  }
  validate(y);
  return y;
}

}  // namespace abcmab
