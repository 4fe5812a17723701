#include "abcmab/pool.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "abcmab/errors.hpp"
#include "abcmab/rng.hpp"

namespace abcmab {

StatisticPool::StatisticPool(std::vector<SummaryStatistic> statistics)
    : statistics_(std::move(statistics)) {
  if (statistics_.size() < 2)
    throw ConfigError(fmt::format("a statistic pool needs at least 2 statistics, got {}",
                                  statistics_.size()));
  std::set<std::string> seen;
  for (const auto& s : statistics_)
    if (!seen.insert(s.id).second) throw ConfigError(fmt::format("duplicate statistic id '{}'", s.id));
}

std::vector<std::string> StatisticPool::ids() const {
  std::vector<std::string> out;
  out.reserve(statistics_.size());
  for (const auto& s : statistics_) out.push_back(s.id);
  return out;
}

StatisticPool StatisticPool::from_ids(std::span<const std::string> ids) {
  std::vector<SummaryStatistic> stats;
  for (const auto& id : ids) stats.push_back(find_statistic(id));
  return StatisticPool(std::move(stats));
}

std::vector<double> evaluate_pool(const StatisticPool& pool, const Trajectory& y) {
  if (y.empty()) throw InputError("statistic pool evaluated on empty trajectory");
  std::vector<double> out;
  out.reserve(pool.size());
  for (const auto& s : pool.statistics()) out.push_back(evaluate(s, y));
  return out;
}

StatisticPool standard_pool(std::size_t k, std::uint64_t seed) {
  const auto& catalog = statistic_catalog();
  if (k < 2 || k > catalog.size())
    throw ConfigError(fmt::format("pool size {} outside [2, {}]", k, catalog.size()));
  std::vector<std::size_t> idx(catalog.size());
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  // Partial Fisher-Yates: the first k slots are a uniform k-subset.
  for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + rng.index(idx.size() - i)]);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  std::vector<SummaryStatistic> stats;
  stats.reserve(k);
  for (auto i : idx) stats.push_back(catalog[i]);
  return StatisticPool(std::move(stats));
}

nlohmann::json catalog_json(std::span<const SummaryStatistic> statistics) {
  auto out = nlohmann::json::array();
  for (const auto& s : statistics) out.push_back(s.to_json());
  return out;
}

}  // namespace abcmab
