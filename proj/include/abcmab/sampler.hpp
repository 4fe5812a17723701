#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abcmab/bandit.hpp"
#include "abcmab/kernels.hpp"
#include "abcmab/metric.hpp"
#include "abcmab/pool.hpp"
#include "abcmab/prior.hpp"
#include "abcmab/simulator.hpp"

namespace abcmab {

struct RunConfig {
  std::size_t n_accept = 100;
  double tau = 0.05;
  std::size_t max_simulations = 300;
  std::uint64_t seed = 0;
  // Simulations dispatched per kernel call; 0 means one per OpenMP thread.
  // Candidate draws depend only on (seed, iteration), so this changes
  // throughput but never results.
  std::size_t batch_size = 0;
  Execution execution = Execution::parallel;

  void validate() const;
};

struct AcceptedSample {
  std::vector<double> theta;
  std::size_t iteration = 0;
  std::optional<std::size_t> arm;  // empty for combined-statistic runs
  double distance = 0.0;
  std::uint64_t sim_seed = 0;
};

struct IterationRecord {
  std::optional<std::size_t> arm;
  Phase phase = Phase::exploit;
  double distance = 0.0;
  bool accepted = false;
};

struct Timings {
  double simulation = 0.0;
  double statistics = 0.0;
  double selection = 0.0;
  double other = 0.0;
  double total = 0.0;
};

struct InferenceRun {
  RunConfig config;
  std::vector<AcceptedSample> accepted;
  std::vector<IterationRecord> iterations;
  std::size_t total_simulations = 0;
  // False when the simulation budget ran out before n_accept acceptances.
  bool completed = false;
  Timings timings;
  std::optional<RewardLedger> ledger;  // dynamic runs only
  std::vector<std::size_t> statistics;  // static runs only
};

/// Seeds of candidate `iteration` under run seed `seed`: the prior draw and
/// the simulator's random variable come from separate substreams.
std::uint64_t candidate_theta_seed(std::uint64_t seed, std::size_t iteration);
std::uint64_t candidate_sim_seed(std::uint64_t seed, std::size_t iteration);

/// Rejection sampling with the summary statistic chosen each iteration by
/// the bandit.
InferenceRun run_dynamic(const Simulator& sim, const StatisticPool& pool, const Prior& prior,
                         const ObservedSummary& observed, const NormalizationState& norm,
                         const BanditConfig& bandit_cfg, const RunConfig& run_cfg);

enum class Combine { single, l2 };

/// Rejection sampling on a fixed statistic subset (combined by the scaled
/// Euclidean norm when `combine` is l2).
InferenceRun run_static(const Simulator& sim, const StatisticPool& pool,
                        std::span<const std::size_t> statistics, Combine combine, const Prior& prior,
                        const ObservedSummary& observed, const NormalizationState& norm,
                        const RunConfig& run_cfg);

/// Min-max normalization from `n` prior-predictive simulations.
NormalizationState calibrate(const Simulator& sim, const StatisticPool& pool, const Prior& prior,
                             const ObservedSummary& observed, std::size_t n, std::uint64_t seed,
                             Execution exec = Execution::parallel);

/// Mean of the accepted parameter vectors. EstimationError when none.
std::vector<double> posterior_estimate(const InferenceRun& run);

/// Mean absolute error; InputError on dimension mismatch.
double mae(std::span<const double> estimate, std::span<const double> truth);

}  // namespace abcmab
