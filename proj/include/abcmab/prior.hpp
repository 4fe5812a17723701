#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace abcmab {

/// p(theta): either independent uniforms on a box, or a uniform choice among
/// a finite set of grid points.
class Prior {
 public:
  /// Throws ConfigError unless lower <= upper elementwise (equal bounds pin
  /// a parameter).
  static Prior box(std::vector<double> lower, std::vector<double> upper);
  static Prior grid(std::vector<std::vector<double>> points);

  std::size_t dim() const noexcept;
  bool is_grid() const noexcept { return !points_.empty(); }
  std::span<const double> lower() const noexcept { return lower_; }
  std::span<const double> upper() const noexcept { return upper_; }
  std::span<const std::vector<double>> points() const noexcept { return points_; }

  bool contains(std::span<const double> theta) const;
  std::vector<double> midpoint() const;

  nlohmann::json to_json() const;
  static Prior from_json(const nlohmann::json& doc);

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<std::vector<double>> points_;
};

/// One independent draw; deterministic in (prior, seed).
std::vector<double> sample_prior(const Prior& prior, std::uint64_t seed);

/// Default search box for a builtin model (LookupError otherwise).
Prior builtin_prior(std::string_view model);

/// Reference parameter vector for a builtin model (LookupError otherwise).
std::vector<double> builtin_truth(std::string_view model);

}  // namespace abcmab
