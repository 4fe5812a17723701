#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "abcmab/pool.hpp"
#include "abcmab/trajectory.hpp"

namespace abcmab {

/// Per-statistic observed summary: mean of each statistic over the observed
/// trajectories.
struct ObservedSummary {
  std::vector<double> per_statistic;
  std::size_t n_observed = 0;
};

ObservedSummary summarize_observed(const StatisticPool& pool, std::span<const Trajectory> observed);

/// |sim - obs|. Throws InputError on non-finite input.
double raw_distance(double stat_value_sim, double stat_value_obs);

/// Frozen per-statistic min-max range of raw distances.
class NormalizationState {
 public:
  explicit NormalizationState(std::size_t num_statistics = 0);

  /// Builds the state from a calibration batch: rows are simulations,
  /// columns are statistics.
  static NormalizationState calibrate(std::span<const std::vector<double>> raw_distance_rows);

  /// Widens statistic i's range to include `raw`.
  void observe(std::size_t i, double raw);

  /// Combines worker-local states (range union, sizes add).
  void merge(const NormalizationState& other);

  void set_calibration_size(std::size_t n) noexcept { calibration_size_ = n; }

  /// (raw - min) / (max - min) clamped to [0, 1]; 0 when max == min.
  /// Throws StateError if statistic i has not been calibrated.
  double normalize(std::size_t i, double raw) const;

  std::size_t size() const noexcept { return min_.size(); }
  std::size_t calibration_size() const noexcept { return calibration_size_; }
  bool calibrated(std::size_t i) const;
  bool fully_calibrated() const;
  double min(std::size_t i) const { return min_[i]; }
  double max(std::size_t i) const { return max_[i]; }

  nlohmann::json to_json() const;

 private:
  std::vector<double> min_;
  std::vector<double> max_;
  std::size_t calibration_size_ = 0;
};

/// Negated normalized distance; input must lie in [0, 1].
double reward(double normalized_distance);

/// L2 norm of normalized per-statistic distances over `subset`, divided by
/// sqrt(|subset|). Throws ConfigError on an empty subset.
double combined_distance(std::span<const double> values_sim, std::span<const double> values_obs,
                         std::span<const std::size_t> subset, const NormalizationState& norm);

/// Same combination applied to already-normalized distances.
double combined_distance(std::span<const double> normalized, std::span<const std::size_t> subset);

}  // namespace abcmab
