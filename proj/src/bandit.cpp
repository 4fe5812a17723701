#include "abcmab/bandit.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "abcmab/errors.hpp"
#include "abcmab/rng.hpp"

namespace abcmab {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::epsilon_first: return "epsilon_first";
    case Strategy::epsilon_greedy: return "epsilon_greedy";
    case Strategy::epsilon_decreasing: return "epsilon_decreasing";
    case Strategy::uniform_random: return "uniform_random";
  }
  return "unknown";
}

std::string_view to_string(Phase p) { return p == Phase::explore ? "explore" : "exploit"; }

Strategy parse_strategy(std::string_view text) {
  for (auto s : {Strategy::epsilon_first, Strategy::epsilon_greedy, Strategy::epsilon_decreasing,
                 Strategy::uniform_random})
    if (to_string(s) == text) return s;
  throw ConfigError(fmt::format("unknown bandit strategy '{}'", text));
}

void BanditConfig::validate() const {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon must lie in [0, 1]");
  if (strategy == Strategy::epsilon_first && exploration_budget == 0)
    throw ConfigError("epsilon_first needs an exploration budget of at least one iteration");
}

std::size_t exploration_budget(double epsilon, std::size_t n) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon must lie in [0, 1]");
  // Guard against products like 0.5 * 100 landing a hair above an integer.
  const double raw = epsilon * static_cast<double>(n);
  const double nearest = std::round(raw);
  const double value = std::abs(raw - nearest) < 1e-9 ? nearest : std::ceil(raw);
  return static_cast<std::size_t>(value);
}

RewardLedger::RewardLedger(std::size_t num_arms)
    : pull_counts_(num_arms, 0), sums_(num_arms, 0.0), sums_sq_(num_arms, 0.0) {}

void RewardLedger::record(std::size_t iteration, std::span<const std::optional<double>> rewards) {
  if (rewards.size() != num_arms())
    throw ContractError(fmt::format("reward row has {} entries, ledger has {} arms", rewards.size(),
                                    num_arms()));
  for (const auto& r : rewards)
    if (r && !(*r >= -1.0 && *r <= 0.0))
      throw ContractError(fmt::format("reward {} outside [-1, 0]", *r));
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    if (!rewards[i]) continue;
    ++pull_counts_[i];
    sums_[i] += *rewards[i];
    sums_sq_[i] += *rewards[i] * *rewards[i];
  }
  rows_.push_back({iteration, {rewards.begin(), rewards.end()}});
}

void RewardLedger::record_one(std::size_t iteration, std::size_t arm, double reward) {
  if (arm >= num_arms()) throw ContractError("arm index out of range");
  std::vector<std::optional<double>> row(num_arms());
  row[arm] = reward;
  record(iteration, row);
}

std::optional<double> RewardLedger::mean(std::size_t arm) const {
  if (pull_counts_[arm] == 0) return std::nullopt;
  return sums_[arm] / static_cast<double>(pull_counts_[arm]);
}

std::vector<std::optional<double>> RewardLedger::means() const {
  std::vector<std::optional<double>> out(num_arms());
  for (std::size_t i = 0; i < num_arms(); ++i) out[i] = mean(i);
  return out;
}

std::optional<double> RewardLedger::variance(std::size_t arm) const {
  if (pull_counts_[arm] == 0) return std::nullopt;
  const double n = static_cast<double>(pull_counts_[arm]);
  const double mu = sums_[arm] / n;
  return std::max(0.0, sums_sq_[arm] / n - mu * mu);
}

std::optional<std::size_t> RewardLedger::best_arm() const {
  std::optional<std::size_t> best;
  double best_mean = 0.0;
  for (std::size_t i = 0; i < num_arms(); ++i) {
    const auto m = mean(i);
    if (m && (!best || *m > best_mean)) {
      best = i;
      best_mean = *m;
    }
  }
  return best;
}

Selection select_arm(const RewardLedger& ledger, const BanditConfig& cfg, std::size_t iteration) {
  const std::size_t k = ledger.num_arms();
  if (k == 0) throw SelectionError("bandit has no arms");
  Rng rng(derive_seed(cfg.seed, Stream::bandit, iteration));
  auto explore = [&] { return Selection{rng.index(k), Phase::explore}; };
  auto exploit = [&] {
    const auto best = ledger.best_arm();
    if (!best) throw SelectionError("cannot exploit before any reward has been observed");
    return Selection{*best, Phase::exploit};
  };

  switch (cfg.strategy) {
    case Strategy::uniform_random: return explore();
    case Strategy::epsilon_first: return iteration < cfg.exploration_budget ? explore() : exploit();
    case Strategy::epsilon_greedy:
    case Strategy::epsilon_decreasing: {
      if (!ledger.best_arm()) return explore();
      // epsilon_decreasing anneals as epsilon / (1 + iteration / K).
      const double eps = cfg.strategy == Strategy::epsilon_greedy
                             ? cfg.epsilon
                             : cfg.epsilon / (1.0 + static_cast<double>(iteration) / static_cast<double>(k));
      if (rng.uniform() < eps) return Selection{rng.index(k), Phase::explore};
      return exploit();
    }
  }
  throw SelectionError("unknown strategy");
}

std::vector<ArmRank> rank_arms(const RewardLedger& ledger) {
  if (ledger.num_rows() == 0) throw StateError("cannot rank arms of an empty ledger");
  std::vector<ArmRank> ranks;
  for (std::size_t i = 0; i < ledger.num_arms(); ++i)
    ranks.push_back({i, ledger.mean(i), ledger.pull_counts()[i]});
  std::stable_sort(ranks.begin(), ranks.end(), [](const ArmRank& a, const ArmRank& b) {
    if (a.mean.has_value() != b.mean.has_value()) return a.mean.has_value();
    if (a.mean && *a.mean != *b.mean) return *a.mean > *b.mean;
    if (a.pulls != b.pulls) return a.pulls > b.pulls;
    return a.arm < b.arm;
  });
  return ranks;
}

}  // namespace abcmab
