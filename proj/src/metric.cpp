#include "abcmab/metric.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "abcmab/errors.hpp"

namespace abcmab {

ObservedSummary summarize_observed(const StatisticPool& pool, std::span<const Trajectory> observed) {
  if (observed.empty()) throw InputError("observed data set is empty");
  ObservedSummary out;
  out.per_statistic.assign(pool.size(), 0.0);
  out.n_observed = observed.size();
  for (const auto& y : observed) {
    const auto values = evaluate_pool(pool, y);
    for (std::size_t i = 0; i < values.size(); ++i) out.per_statistic[i] += values[i];
  }
  for (auto& v : out.per_statistic) v /= static_cast<double>(observed.size());
  return out;
}

double raw_distance(double stat_value_sim, double stat_value_obs) {
  if (!std::isfinite(stat_value_sim) || !std::isfinite(stat_value_obs))
    throw InputError("distance between non-finite statistic values");
  return std::abs(stat_value_sim - stat_value_obs);
}

NormalizationState::NormalizationState(std::size_t num_statistics)
    : min_(num_statistics, std::numeric_limits<double>::infinity()),
      max_(num_statistics, -std::numeric_limits<double>::infinity()) {}

NormalizationState NormalizationState::calibrate(std::span<const std::vector<double>> rows) {
  if (rows.empty()) throw StateError("calibration batch is empty");
  NormalizationState state(rows.front().size());
  for (const auto& row : rows) {
    if (row.size() != state.size()) throw InputError("ragged calibration batch");
    for (std::size_t i = 0; i < row.size(); ++i) state.observe(i, row[i]);
  }
  state.calibration_size_ = rows.size();
  return state;
}

void NormalizationState::observe(std::size_t i, double raw) {
  if (!std::isfinite(raw)) throw InputError("non-finite calibration distance");
  min_[i] = std::min(min_[i], raw);
  max_[i] = std::max(max_[i], raw);
}

void NormalizationState::merge(const NormalizationState& other) {
  if (other.size() != size()) throw InputError("merging normalization states of different sizes");
  for (std::size_t i = 0; i < size(); ++i) {
    min_[i] = std::min(min_[i], other.min_[i]);
    max_[i] = std::max(max_[i], other.max_[i]);
  }
  calibration_size_ += other.calibration_size_;
}

bool NormalizationState::calibrated(std::size_t i) const { return i < size() && min_[i] <= max_[i]; }

bool NormalizationState::fully_calibrated() const {
  if (size() == 0) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (!calibrated(i)) return false;
  return true;
}

double NormalizationState::normalize(std::size_t i, double raw) const {
  if (!calibrated(i)) throw StateError(fmt::format("statistic {} is not calibrated", i));
  const double span = max_[i] - min_[i];
  if (span <= 0.0) return 0.0;
  return std::clamp((raw - min_[i]) / span, 0.0, 1.0);
}

nlohmann::json NormalizationState::to_json() const {
  nlohmann::json out;
  out["calibration_size"] = calibration_size_;
  out["min"] = min_;
  out["max"] = max_;
  return out;
}

double reward(double normalized_distance) {
  if (!(normalized_distance >= 0.0 && normalized_distance <= 1.0))
    throw ContractError(fmt::format("normalized distance {} outside [0, 1]", normalized_distance));
  return -normalized_distance;
}

double combined_distance(std::span<const double> normalized, std::span<const std::size_t> subset) {
  if (subset.empty()) throw ConfigError("combined distance needs a non-empty subset");
  double acc = 0.0;
  for (auto i : subset) acc += normalized[i] * normalized[i];
  return std::sqrt(acc) / std::sqrt(static_cast<double>(subset.size()));
}

double combined_distance(std::span<const double> values_sim, std::span<const double> values_obs,
                         std::span<const std::size_t> subset, const NormalizationState& norm) {
  if (subset.empty()) throw ConfigError("combined distance needs a non-empty subset");
  if (values_sim.size() != values_obs.size()) throw InputError("summary vectors differ in length");
  if (subset.size() == 1) {
    // Exact identity with the single-statistic path (sqrt(d^2) may round).
    const auto i = subset.front();
    return norm.normalize(i, raw_distance(values_sim[i], values_obs[i]));
  }
  double acc = 0.0;
  for (auto i : subset) {
    if (i >= values_sim.size()) throw InputError("subset index out of range");
    const double d = norm.normalize(i, raw_distance(values_sim[i], values_obs[i]));
    acc += d * d;
  }
  return std::sqrt(acc) / std::sqrt(static_cast<double>(subset.size()));
}

}  // namespace abcmab
