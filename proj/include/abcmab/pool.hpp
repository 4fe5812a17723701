#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "abcmab/statistics.hpp"
#include "abcmab/trajectory.hpp"

namespace abcmab {

/// Ordered set of K >= 2 statistics with unique ids; the bandit's arms.
class StatisticPool {
 public:
  explicit StatisticPool(std::vector<SummaryStatistic> statistics);

  std::size_t size() const noexcept { return statistics_.size(); }
  const SummaryStatistic& operator[](std::size_t i) const { return statistics_[i]; }
  std::span<const SummaryStatistic> statistics() const noexcept { return statistics_; }
  std::vector<std::string> ids() const;

  static StatisticPool from_ids(std::span<const std::string> ids);

 private:
  std::vector<SummaryStatistic> statistics_;
};

/// Element i is evaluate(pool[i], y).
std::vector<double> evaluate_pool(const StatisticPool& pool, const Trajectory& y);

/// K distinct catalog statistics drawn uniformly without replacement, kept
/// in catalog order. Throws ConfigError unless 2 <= K <= catalog size.
StatisticPool standard_pool(std::size_t k, std::uint64_t seed);

/// JSON array of {id, family, params}.
nlohmann::json catalog_json(std::span<const SummaryStatistic> statistics);

}  // namespace abcmab
