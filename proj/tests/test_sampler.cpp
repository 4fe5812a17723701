#include <doctest.h>

#include <cmath>

#include "abcmab/errors.hpp"
#include "abcmab/models.hpp"
#include "abcmab/prior.hpp"
#include "abcmab/rng.hpp"
#include "abcmab/sampler.hpp"
#include "toy_models.hpp"

using namespace abcmab;

namespace {

struct GaussianProblem {
  Simulator sim = testing::gaussian_simulator(50);
  StatisticPool pool = StatisticPool::from_ids(std::vector<std::string>{"mean", "variance", "maximum", "autocorrelation__lag_1"});
  Prior prior = Prior::box({-10}, {10});
  ObservedSummary observed;
  NormalizationState norm;

  GaussianProblem() {
    const std::vector<Trajectory> obs{sim(std::vector<double>{1.5}, 404)};
    observed = summarize_observed(pool, obs);
    norm = calibrate(sim, pool, prior, observed, 200, 505);
  }

  BanditConfig bandit(std::size_t n_accept) const {
    BanditConfig cfg;
    cfg.exploration_budget = exploration_budget(0.5, n_accept);
    cfg.seed = 66;
    return cfg;
  }
};

RunConfig run_cfg(std::size_t n, double tau, std::size_t budget, std::uint64_t seed = 1) {
  RunConfig cfg;
  cfg.n_accept = n;
  cfg.tau = tau;
  cfg.max_simulations = budget;
  cfg.seed = seed;
  return cfg;
}

bool same_run(const InferenceRun& a, const InferenceRun& b) {
  if (a.total_simulations != b.total_simulations || a.accepted.size() != b.accepted.size()) return false;
  for (std::size_t i = 0; i < a.accepted.size(); ++i) {
    const auto &x = a.accepted[i], &y = b.accepted[i];
    if (x.theta != y.theta || x.iteration != y.iteration || x.arm != y.arm ||
        x.distance != y.distance || x.sim_seed != y.sim_seed)
      return false;
  }
  for (std::size_t i = 0; i < a.iterations.size(); ++i) {
    const auto &x = a.iterations[i], &y = b.iterations[i];
    if (x.arm != y.arm || x.phase != y.phase || x.distance != y.distance || x.accepted != y.accepted)
      return false;
  }
  if (a.ledger.has_value() != b.ledger.has_value()) return false;
  if (a.ledger) {
    const auto ra = a.ledger->rows(), rb = b.ledger->rows();
    if (ra.size() != rb.size()) return false;
    for (std::size_t i = 0; i < ra.size(); ++i)
      if (ra[i].iteration != rb[i].iteration || ra[i].rewards != rb[i].rewards) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("tau of one accepts every simulation") {
  GaussianProblem g;
  const auto run = run_dynamic(g.sim, g.pool, g.prior, g.observed, g.norm, g.bandit(30), run_cfg(30, 1.0, 500));
  CHECK(run.completed);
  CHECK(run.accepted.size() == 30);
  CHECK(run.total_simulations == 30);
}

TEST_CASE("posterior estimate examples") {
  InferenceRun run;
  CHECK_THROWS_AS(posterior_estimate(run), EstimationError);
  run.accepted.push_back({{3.0, -1.0}, 0, {}, 0.0, 0});
  CHECK(posterior_estimate(run) == std::vector<double>{3.0, -1.0});
  run.accepted = {{{0, 0}, 0, {}, 0, 0}, {{2, 4}, 1, {}, 0, 0}};
  CHECK(posterior_estimate(run) == std::vector<double>{1.0, 2.0});

  Rng rng(12);
  run.accepted.clear();
  std::vector<double> sum(5, 0.0);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> t(5);
    for (std::size_t d = 0; d < 5; ++d) sum[d] += (t[d] = rng.uniform(-100, 100));
    run.accepted.push_back({t, 0, {}, 0, 0});
  }
  const auto est = posterior_estimate(run);
  for (std::size_t d = 0; d < 5; ++d)
    CHECK(std::abs(est[d] - sum[d] / 100) <= 1e-12 * std::max(1.0, std::abs(sum[d] / 100)));
}

TEST_CASE("mae examples") {
  const std::vector<double> truth{1, 2, 3};
  CHECK(mae(truth, truth) == 0.0);
  CHECK(mae(std::vector<double>{2, 3, 4}, truth) == 1.0);
  CHECK_THROWS_AS(mae(std::vector<double>{1, 2}, truth), InputError);

  // Box midpoints against the reference vector: deviations sum to 104.54.
  const auto mid = builtin_prior("vilar_oscillator").midpoint();
  CHECK(mae(mid, builtin_truth("vilar_oscillator")) == doctest::Approx(104.54 / 15).epsilon(1e-12));
  CHECK(mae(mid, builtin_truth("vilar_oscillator")) == doctest::Approx(6.969333333333));
}

TEST_CASE("accepted samples are sound and inside the prior") {
  GaussianProblem g;
  const auto run = run_dynamic(g.sim, g.pool, g.prior, g.observed, g.norm, g.bandit(40), run_cfg(40, 0.05, 3000));
  REQUIRE_FALSE(run.accepted.empty());
  for (const auto& a : run.accepted) {
    CHECK(g.prior.contains(a.theta));
    CHECK(a.distance <= 0.05);
    REQUIRE(a.arm.has_value());
    const auto y = g.sim(a.theta, a.sim_seed);
    const double raw = raw_distance(evaluate(g.pool[*a.arm], y), g.observed.per_statistic[*a.arm]);
    const double d = g.norm.normalize(*a.arm, raw);
    CHECK(d == a.distance);
    CHECK(d <= 0.05);
  }
  CHECK(run.accepted.size() <= 40);
  CHECK(run.total_simulations <= 3000);
}

TEST_CASE("raising the budget never loses acceptances") {
  GaussianProblem g;
  std::size_t prev = 0;
  for (std::size_t budget : {0, 10, 50, 100, 400, 1000}) {
    const auto run = run_dynamic(g.sim, g.pool, g.prior, g.observed, g.norm, g.bandit(500),
                                 run_cfg(500, 0.05, budget));
    CHECK(run.accepted.size() >= prev);
    CHECK(run.total_simulations == budget);
    CHECK_FALSE(run.completed);
    prev = run.accepted.size();
  }
}

TEST_CASE("runs are deterministic and independent of batching and execution") {
  GaussianProblem g;
  auto base = run_cfg(25, 0.05, 800, 9);
  const auto ref = run_dynamic(g.sim, g.pool, g.prior, g.observed, g.norm, g.bandit(25), base);
  CHECK(same_run(ref, run_dynamic(g.sim, g.pool, g.prior, g.observed, g.norm, g.bandit(25), base)));
  for (std::size_t batch : {1, 3, 16, 1000}) {
    for (auto exec : {Execution::serial, Execution::parallel}) {
      auto cfg = base;
      cfg.batch_size = batch;
      cfg.execution = exec;
      CHECK(same_run(ref, run_dynamic(g.sim, g.pool, g.prior, g.observed, g.norm, g.bandit(25), cfg)));
    }
  }
  auto other = base;
  other.seed = 10;
  CHECK_FALSE(same_run(ref, run_dynamic(g.sim, g.pool, g.prior, g.observed, g.norm, g.bandit(25), other)));
}

TEST_CASE("a looser threshold accepts a superset at a fixed budget") {
  GaussianProblem g;
  const std::vector<std::size_t> stat{0};
  const auto tight = run_static(g.sim, g.pool, stat, Combine::single, g.prior, g.observed, g.norm,
                                run_cfg(10'000, 0.02, 600));
  const auto loose = run_static(g.sim, g.pool, stat, Combine::single, g.prior, g.observed, g.norm,
                                run_cfg(10'000, 0.1, 600));
  CHECK(loose.accepted.size() >= tight.accepted.size());
  std::size_t j = 0;
  for (const auto& a : tight.accepted) {
    while (j < loose.accepted.size() && loose.accepted[j].iteration < a.iteration) ++j;
    REQUIRE(j < loose.accepted.size());
    CHECK(loose.accepted[j].iteration == a.iteration);
  }
}

TEST_CASE("static runs") {
  GaussianProblem g;
  const std::vector<std::size_t> one{0}, three{0, 1, 2};
  const auto single = run_static(g.sim, g.pool, one, Combine::single, g.prior, g.observed, g.norm,
                                 run_cfg(20, 0.05, 2000));
  const auto l2 = run_static(g.sim, g.pool, one, Combine::l2, g.prior, g.observed, g.norm,
                             run_cfg(20, 0.05, 2000));
  CHECK(single.completed);
  REQUIRE(single.accepted.size() == l2.accepted.size());
  for (std::size_t i = 0; i < single.accepted.size(); ++i)
    CHECK(single.accepted[i].distance == l2.accepted[i].distance);
  CHECK(single.accepted.front().arm == 0);
  CHECK_FALSE(l2.accepted.front().arm.has_value());
  CHECK_FALSE(single.ledger.has_value());
  CHECK(single.timings.selection == 0.0);

  const auto combo = run_static(g.sim, g.pool, three, Combine::l2, g.prior, g.observed, g.norm,
                                run_cfg(5, 0.2, 2000));
  for (const auto& a : combo.accepted) CHECK(a.distance <= 0.2);

  CHECK_THROWS_AS(run_static(g.sim, g.pool, three, Combine::single, g.prior, g.observed, g.norm,
                             run_cfg(5, 0.2, 10)),
                  ConfigError);
  const std::vector<std::size_t> outside{9};
  CHECK_THROWS_AS(run_static(g.sim, g.pool, outside, Combine::single, g.prior, g.observed, g.norm,
                             run_cfg(5, 0.2, 10)),
                  ConfigError);
}

TEST_CASE("timings") {
  GaussianProblem g;
  const auto empty = run_dynamic(g.sim, g.pool, g.prior, g.observed, g.norm, g.bandit(10), run_cfg(10, 0.05, 0));
  CHECK(empty.timings.selection == 0.0);
  CHECK(empty.total_simulations == 0);
  CHECK(empty.accepted.empty());

  const auto run = run_dynamic(g.sim, g.pool, g.prior, g.observed, g.norm, g.bandit(20), run_cfg(20, 0.05, 2000));
  const auto& t = run.timings;
  CHECK(t.selection > 0.0);
  CHECK(t.selection < t.total);
  CHECK(t.simulation + t.statistics + t.selection <= t.total + 1e-9);
  CHECK(t.other >= 0.0);
}

TEST_CASE("configuration and state errors") {
  GaussianProblem g;
  const NormalizationState raw(g.pool.size());
  CHECK_THROWS_AS(run_dynamic(g.sim, g.pool, g.prior, g.observed, raw, g.bandit(5), run_cfg(5, 0.05, 10)),
                  StateError);
  CHECK_THROWS_AS(run_dynamic(g.sim, g.pool, g.prior, g.observed, g.norm, g.bandit(5), run_cfg(0, 0.05, 10)),
                  ConfigError);
  CHECK_THROWS_AS(run_dynamic(g.sim, g.pool, g.prior, g.observed, g.norm, g.bandit(5), run_cfg(5, 0.0, 10)),
                  ConfigError);
  CHECK_THROWS_AS(run_dynamic(g.sim, g.pool, g.prior, g.observed, g.norm, g.bandit(5), run_cfg(5, 1.5, 10)),
                  ConfigError);
  ObservedSummary short_obs{{1.0}, 1};
  CHECK_THROWS_AS(run_dynamic(g.sim, g.pool, g.prior, short_obs, g.norm, g.bandit(5), run_cfg(5, 0.05, 10)),
                  InputError);
}

TEST_CASE("ledger rows follow the recording rule") {
  GaussianProblem g;
  for (bool all : {true, false}) {
    auto bandit = g.bandit(20);
    bandit.record_all = all;
    const auto run = run_dynamic(g.sim, g.pool, g.prior, g.observed, g.norm, bandit, run_cfg(20, 0.05, 1000));
    const auto rows = run.ledger->rows();
    REQUIRE(rows.size() == run.iterations.size());
    for (std::size_t m = 0; m < rows.size(); ++m) {
      std::size_t present = 0;
      for (const auto& r : rows[m].rewards) {
        if (!r) continue;
        ++present;
        CHECK(*r <= 0.0);
        CHECK(*r >= -1.0);
      }
      const bool full = all && run.iterations[m].phase == Phase::explore;
      CHECK(present == (full ? g.pool.size() : 1));
      CHECK(rows[m].rewards[*run.iterations[m].arm] == -run.iterations[m].distance);
    }
  }
}
