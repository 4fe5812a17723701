#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace abcmab {

enum class Strategy { epsilon_first, epsilon_greedy, epsilon_decreasing, uniform_random };
enum class Phase { explore, exploit };

std::string_view to_string(Strategy s);
std::string_view to_string(Phase p);
Strategy parse_strategy(std::string_view text);

struct BanditConfig {
  Strategy strategy = Strategy::epsilon_first;
  double epsilon = 0.5;
  // Number of leading exploration iterations for epsilon_first.
  std::size_t exploration_budget = 1;
  std::uint64_t seed = 0;
  // Record every arm's reward on exploration iterations (full rows of R).
  bool record_all = true;

  /// Throws ConfigError on an out-of-range epsilon or a zero budget for
  /// epsilon_first.
  void validate() const;
};

/// ceil(epsilon * n).
std::size_t exploration_budget(double epsilon, std::size_t n);

/// Append-only j x K reward matrix with per-arm pull counts and sums.
class RewardLedger {
 public:
  struct Row {
    std::size_t iteration = 0;
    std::vector<std::optional<double>> rewards;
  };

  explicit RewardLedger(std::size_t num_arms);

  /// Appends a row. Every present reward must lie in [-1, 0], otherwise
  /// ContractError and the ledger is left unchanged.
  void record(std::size_t iteration, std::span<const std::optional<double>> rewards);

  /// Convenience for a row holding a single arm's reward.
  void record_one(std::size_t iteration, std::size_t arm, double reward);

  std::size_t num_arms() const noexcept { return pull_counts_.size(); }
  std::size_t num_rows() const noexcept { return rows_.size(); }
  std::span<const Row> rows() const noexcept { return rows_; }
  std::span<const std::size_t> pull_counts() const noexcept { return pull_counts_; }
  std::span<const double> running_sums() const noexcept { return sums_; }

  /// Column mean r-bar_i; nullopt for an arm never pulled.
  std::optional<double> mean(std::size_t arm) const;
  std::vector<std::optional<double>> means() const;

  /// Population variance of arm's rewards (diagnostic only).
  std::optional<double> variance(std::size_t arm) const;

  /// Lowest-index argmax of r-bar over pulled arms; nullopt if none pulled.
  std::optional<std::size_t> best_arm() const;

 private:
  std::vector<Row> rows_;
  std::vector<std::size_t> pull_counts_;
  std::vector<double> sums_;
  std::vector<double> sums_sq_;
};

struct Selection {
  std::size_t arm = 0;
  Phase phase = Phase::explore;
};

/// SelectStatistic. Exploration draws are counter-based on (cfg.seed,
/// iteration), so the result is a pure function of its arguments.
/// epsilon_first exploits only once `iteration >= cfg.exploration_budget`;
/// exploiting with no pulled arm throws SelectionError. The epsilon_greedy
/// and epsilon_decreasing strategies explore while nothing has been pulled.
Selection select_arm(const RewardLedger& ledger, const BanditConfig& cfg, std::size_t iteration);

struct ArmRank {
  std::size_t arm = 0;
  std::optional<double> mean;
  std::size_t pulls = 0;
};

/// Arms by r-bar descending, ties by pulls descending then index ascending;
/// unpulled arms last. Throws StateError when nothing has been recorded.
std::vector<ArmRank> rank_arms(const RewardLedger& ledger);

}  // namespace abcmab
