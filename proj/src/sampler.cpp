#include "abcmab/sampler.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>

#include "abcmab/errors.hpp"
#include "abcmab/rng.hpp"

namespace abcmab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_inputs(const StatisticPool& pool, const Prior& prior, const ObservedSummary& observed,
                  const NormalizationState& norm, const RunConfig& cfg) {
  cfg.validate();
  if (observed.per_statistic.size() != pool.size())
    throw InputError("observed summary does not match the statistic pool");
  if (norm.size() != pool.size() || !norm.fully_calibrated())
    throw StateError("normalization state is not calibrated for this pool");
  if (prior.dim() == 0) throw ConfigError("prior has no dimensions");
}

struct Candidates {
  std::vector<SimTask> tasks;
  std::vector<std::vector<double>> summaries;
};

// Simulates and summarizes candidates [first, first + count).
Candidates draw_candidates(const Simulator& sim, const StatisticPool& pool, const Prior& prior,
                           const RunConfig& cfg, std::size_t first, std::size_t count,
                           Timings& timings) {
  Candidates c;
  c.tasks.reserve(count);
  for (std::size_t m = first; m < first + count; ++m)
    c.tasks.push_back({sample_prior(prior, candidate_theta_seed(cfg.seed, m)),
                       candidate_sim_seed(cfg.seed, m)});
  auto t0 = Clock::now();
  const auto ys = simulate_batch(sim, c.tasks, cfg.execution);
  timings.simulation += seconds_since(t0);
  t0 = Clock::now();
  c.summaries = evaluate_batch(pool, ys, cfg.execution);
  timings.statistics += seconds_since(t0);
  return c;
}

std::vector<double> normalized_distances(std::span<const double> summary,
                                         const ObservedSummary& observed,
                                         const NormalizationState& norm) {
  std::vector<double> d(summary.size());
  for (std::size_t i = 0; i < summary.size(); ++i)
    d[i] = norm.normalize(i, raw_distance(summary[i], observed.per_statistic[i]));
  return d;
}

std::size_t effective_batch(const RunConfig& cfg) {
  return cfg.batch_size > 0 ? cfg.batch_size : static_cast<std::size_t>(std::max(1, max_threads()));
}

void finish_timings(Timings& t, Clock::time_point start) {
  t.total = seconds_since(start);
  t.other = std::max(0.0, t.total - t.simulation - t.statistics - t.selection);
}

}  // namespace

void RunConfig::validate() const {
  if (n_accept == 0) throw ConfigError("n_accept must be at least 1");
  if (!(tau > 0.0 && tau <= 1.0)) throw ConfigError("tau must lie in (0, 1]");
}

std::uint64_t candidate_theta_seed(std::uint64_t seed, std::size_t iteration) {
  return derive_seed(seed, Stream::prior, iteration);
}

std::uint64_t candidate_sim_seed(std::uint64_t seed, std::size_t iteration) {
  return derive_seed(seed, Stream::simulator, iteration);
}

InferenceRun run_dynamic(const Simulator& sim, const StatisticPool& pool, const Prior& prior,
                         const ObservedSummary& observed, const NormalizationState& norm,
                         const BanditConfig& bandit_cfg, const RunConfig& run_cfg) {
  const auto start = Clock::now();
  check_inputs(pool, prior, observed, norm, run_cfg);
  bandit_cfg.validate();

  InferenceRun run;
  run.config = run_cfg;
  run.ledger.emplace(pool.size());
  auto& ledger = *run.ledger;
  const std::size_t k = pool.size();

  std::size_t m = 0;
  while (run.accepted.size() < run_cfg.n_accept && m < run_cfg.max_simulations) {
    const std::size_t count = std::min(effective_batch(run_cfg), run_cfg.max_simulations - m);
    const auto batch = draw_candidates(sim, pool, prior, run_cfg, m, count, run.timings);
    for (std::size_t b = 0; b < count && run.accepted.size() < run_cfg.n_accept; ++b, ++m) {
      const auto d = normalized_distances(batch.summaries[b], observed, norm);

      const auto t0 = Clock::now();
      const Selection sel = select_arm(ledger, bandit_cfg, m);
      std::vector<std::optional<double>> row(k);
      if (sel.phase == Phase::explore && bandit_cfg.record_all) {
        for (std::size_t i = 0; i < k; ++i) row[i] = reward(d[i]);
      } else {
        row[sel.arm] = reward(d[sel.arm]);
      }
      ledger.record(m, row);
      run.timings.selection += seconds_since(t0);

      const bool accept = d[sel.arm] <= run_cfg.tau;
      run.iterations.push_back({sel.arm, sel.phase, d[sel.arm], accept});
      if (accept)
        run.accepted.push_back({batch.tasks[b].theta, m, sel.arm, d[sel.arm], batch.tasks[b].seed});
    }
  }
  run.total_simulations = m;
  run.completed = run.accepted.size() >= run_cfg.n_accept;
  finish_timings(run.timings, start);
  return run;
}

InferenceRun run_static(const Simulator& sim, const StatisticPool& pool,
                        std::span<const std::size_t> statistics, Combine combine, const Prior& prior,
                        const ObservedSummary& observed, const NormalizationState& norm,
                        const RunConfig& run_cfg) {
  const auto start = Clock::now();
  check_inputs(pool, prior, observed, norm, run_cfg);
  if (statistics.empty()) throw ConfigError("static run needs at least one statistic");
  if (combine == Combine::single && statistics.size() != 1)
    throw ConfigError("single-statistic combination takes exactly one statistic");
  for (auto i : statistics)
    if (i >= pool.size()) throw ConfigError("static statistic index outside the pool");

  InferenceRun run;
  run.config = run_cfg;
  run.statistics.assign(statistics.begin(), statistics.end());
  const std::optional<std::size_t> arm =
      combine == Combine::single ? std::optional(statistics.front()) : std::nullopt;

  std::size_t m = 0;
  while (run.accepted.size() < run_cfg.n_accept && m < run_cfg.max_simulations) {
    const std::size_t count = std::min(effective_batch(run_cfg), run_cfg.max_simulations - m);
    const auto batch = draw_candidates(sim, pool, prior, run_cfg, m, count, run.timings);
    for (std::size_t b = 0; b < count && run.accepted.size() < run_cfg.n_accept; ++b, ++m) {
      const double d = combined_distance(batch.summaries[b], observed.per_statistic, statistics, norm);
      const bool accept = d <= run_cfg.tau;
      run.iterations.push_back({arm, Phase::exploit, d, accept});
      if (accept) run.accepted.push_back({batch.tasks[b].theta, m, arm, d, batch.tasks[b].seed});
    }
  }
  run.total_simulations = m;
  run.completed = run.accepted.size() >= run_cfg.n_accept;
  finish_timings(run.timings, start);
  return run;
}

NormalizationState calibrate(const Simulator& sim, const StatisticPool& pool, const Prior& prior,
                             const ObservedSummary& observed, std::size_t n, std::uint64_t seed,
                             Execution exec) {
  if (n == 0) throw ConfigError("calibration needs at least one simulation");
  if (observed.per_statistic.size() != pool.size())
    throw InputError("observed summary does not match the statistic pool");
  std::vector<SimTask> tasks;
  tasks.reserve(n);
  for (std::size_t m = 0; m < n; ++m)
    tasks.push_back({sample_prior(prior, candidate_theta_seed(seed, m)), candidate_sim_seed(seed, m)});
  const auto ys = simulate_batch(sim, tasks, exec);
  const auto summaries = evaluate_batch(pool, ys, exec);
  std::vector<std::vector<double>> rows;
  rows.reserve(n);
  for (const auto& s : summaries) {
    std::vector<double> row(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) row[i] = raw_distance(s[i], observed.per_statistic[i]);
    rows.push_back(std::move(row));
  }
  return NormalizationState::calibrate(rows);
}

std::vector<double> posterior_estimate(const InferenceRun& run) {
  if (run.accepted.empty()) throw EstimationError("no accepted samples to estimate from");
  std::vector<double> mean(run.accepted.front().theta.size(), 0.0);
  for (const auto& a : run.accepted)
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += a.theta[i];
  for (auto& v : mean) v /= static_cast<double>(run.accepted.size());
  return mean;
}

double mae(std::span<const double> estimate, std::span<const double> truth) {
  if (estimate.size() != truth.size() || estimate.empty())
    throw InputError(fmt::format("mae of vectors with dimensions {} and {}", estimate.size(), truth.size()));
  double acc = 0.0;
  for (std::size_t i = 0; i < estimate.size(); ++i) acc += std::abs(estimate[i] - truth[i]);
  return acc / static_cast<double>(estimate.size());
}

}  // namespace abcmab
