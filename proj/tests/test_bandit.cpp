#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "abcmab/bandit.hpp"
#include "abcmab/errors.hpp"
#include "abcmab/rng.hpp"

using namespace abcmab;

namespace {

RewardLedger ledger_with_means(std::vector<double> means) {
  RewardLedger l(means.size());
  for (std::size_t i = 0; i < means.size(); ++i) l.record_one(i, i, means[i]);
  return l;
}

BanditConfig exploit_cfg() {
  BanditConfig cfg;
  cfg.exploration_budget = 1;
  return cfg;
}

}  // namespace

TEST_CASE("exploration draws are uniform over arms") {
  RewardLedger l(10);
  BanditConfig cfg;
  cfg.exploration_budget = 100'000;
  cfg.seed = 12345;
  std::vector<int> hits(10, 0);
  for (std::size_t m = 0; m < 100'000; ++m) {
    const auto s = select_arm(l, cfg, m);
    CHECK(s.phase == Phase::explore);
    ++hits[s.arm];
  }
  for (int h : hits) {
    CHECK(h / 1e5 >= 0.09);
    CHECK(h / 1e5 <= 0.11);
  }
}

TEST_CASE("exploitation picks the lowest-index argmax") {
  CHECK(select_arm(ledger_with_means({-0.2, -0.5, -0.1}), exploit_cfg(), 5).arm == 2);
  CHECK(select_arm(ledger_with_means({-0.3, -0.3}), exploit_cfg(), 5).arm == 0);
  CHECK(select_arm(ledger_with_means({-0.3, -0.3}), exploit_cfg(), 5).phase == Phase::exploit);
}

TEST_CASE("unpulled arms are excluded from exploitation") {
  RewardLedger l(3);
  l.record_one(0, 1, -0.9);
  CHECK(select_arm(l, exploit_cfg(), 1).arm == 1);
  CHECK_THROWS_AS(select_arm(RewardLedger(3), exploit_cfg(), 1), SelectionError);
}

TEST_CASE("selection is a pure function of its arguments") {
  const auto l = ledger_with_means({-0.5, -0.4, -0.6});
  BanditConfig cfg;
  cfg.exploration_budget = 50;
  cfg.seed = 9;
  for (std::size_t m = 0; m < 100; ++m) {
    const auto a = select_arm(l, cfg, m), b = select_arm(l, cfg, m);
    CHECK(a.arm == b.arm);
    CHECK(a.phase == b.phase);
  }
}

TEST_CASE("record examples") {
  RewardLedger l(5);
  const std::vector<std::optional<double>> row{std::nullopt, std::nullopt, std::nullopt, -0.4, std::nullopt};
  l.record(0, row);
  CHECK(std::vector<std::size_t>(l.pull_counts().begin(), l.pull_counts().end()) ==
        std::vector<std::size_t>{0, 0, 0, 1, 0});
  CHECK(l.mean(3) == -0.4);
  CHECK_FALSE(l.mean(0).has_value());

  RewardLedger two(1);
  two.record_one(0, 0, -0.2);
  two.record_one(1, 0, -0.6);
  CHECK(*two.mean(0) == doctest::Approx(-0.4));
}

TEST_CASE("out-of-range rewards leave the ledger unchanged") {
  RewardLedger l(2);
  l.record_one(0, 0, -0.5);
  const std::vector<std::optional<double>> bad{-0.1, 0.2};
  CHECK_THROWS_AS(l.record(1, bad), ContractError);
  CHECK_THROWS_AS(l.record_one(1, 1, -1.01), ContractError);
  CHECK(l.num_rows() == 1);
  CHECK(l.pull_counts()[1] == 0);
  CHECK(l.mean(0) == -0.5);
}

TEST_CASE("incremental means equal a full-matrix recomputation") {
  constexpr std::size_t k = 7;
  Rng rng(31);
  RewardLedger l(k);
  std::vector<std::vector<std::optional<double>>> matrix;
  for (std::size_t j = 0; j < 100; ++j) {
    std::vector<std::optional<double>> row(k);
    for (auto& r : row)
      if (rng.uniform() < 0.6) r = -rng.uniform();
    matrix.push_back(row);
    l.record(j, row);
  }
  for (std::size_t i = 0; i < k; ++i) {
    double sum = 0;
    std::size_t n = 0;
    for (const auto& row : matrix)
      if (row[i]) sum += *row[i], ++n;
    REQUIRE(n > 0);
    CHECK(l.pull_counts()[i] == n);
    const double batch = sum / static_cast<double>(n);
    CHECK(std::abs(*l.mean(i) - batch) <= 1e-12 * std::abs(batch));
    CHECK(*l.mean(i) == l.running_sums()[i] / static_cast<double>(l.pull_counts()[i]));
  }
}

TEST_CASE("exploration budget") {
  CHECK(exploration_budget(0.5, 100) == 50);
  CHECK(exploration_budget(0.0, 100) == 0);
  CHECK(exploration_budget(1.0, 7) == 7);
  CHECK(exploration_budget(0.1, 30) == 3);
  CHECK(exploration_budget(0.25, 7) == 2);
  CHECK_THROWS_AS(exploration_budget(1.5, 7), ConfigError);
}

TEST_CASE("rank_arms examples") {
  auto order = [](const std::vector<ArmRank>& r) {
    std::vector<std::size_t> o;
    for (const auto& a : r) o.push_back(a.arm);
    return o;
  };
  CHECK(order(rank_arms(ledger_with_means({-0.1, -0.9}))) == std::vector<std::size_t>{0, 1});

  RewardLedger ties(2);
  for (int i = 0; i < 2; ++i) ties.record_one(i, 1, -0.5);
  for (int i = 0; i < 5; ++i) ties.record_one(i, 0, -0.5);
  CHECK(order(rank_arms(ties)) == std::vector<std::size_t>{0, 1});

  RewardLedger partial(3);
  partial.record_one(0, 2, -0.7);
  const auto r = rank_arms(partial);
  CHECK(order(r) == std::vector<std::size_t>{2, 0, 1});
  CHECK_FALSE(r[1].mean.has_value());

  CHECK_THROWS_AS(rank_arms(RewardLedger(3)), StateError);
}

TEST_CASE("rank_arms matches an independent sort") {
  constexpr std::size_t k = 12;
  Rng rng(77);
  RewardLedger l(k);
  std::vector<double> sum(k, 0.0);
  std::vector<std::size_t> n(k, 0);
  for (std::size_t j = 0; j < 60; ++j) {
    const auto arm = rng.index(k - 2);  // arms k-2 and k-1 never pulled
    // Quarter-step rewards make exact ties likely.
    const double r = -0.25 * static_cast<double>(rng.index(5));
    l.record_one(j, arm, r);
    sum[arm] += r;
    ++n[arm];
  }
  std::vector<std::size_t> oracle(k);
  for (std::size_t i = 0; i < k; ++i) oracle[i] = i;
  std::stable_sort(oracle.begin(), oracle.end(), [&](std::size_t a, std::size_t b) {
    if ((n[a] > 0) != (n[b] > 0)) return n[a] > 0;
    if (n[a] == 0) return a < b;
    const double ma = sum[a] / n[a], mb = sum[b] / n[b];
    if (ma != mb) return ma > mb;
    if (n[a] != n[b]) return n[a] > n[b];
    return a < b;
  });
  const auto ranked = rank_arms(l);
  for (std::size_t i = 0; i < k; ++i) CHECK(ranked[i].arm == oracle[i]);
}

TEST_CASE("exploitation choice is invariant to positive reward scaling") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    RewardLedger a(6), b(6);
    const double c = rng.uniform(0.05, 1.0);
    for (std::size_t j = 0; j < 30; ++j) {
      const auto arm = rng.index(6);
      const double r = -rng.uniform();
      a.record_one(j, arm, r);
      b.record_one(j, arm, c * r);
    }
    CHECK(select_arm(a, exploit_cfg(), 30).arm == select_arm(b, exploit_cfg(), 30).arm);
  }
}

TEST_CASE("epsilon-first phase boundary") {
  BanditConfig cfg;
  cfg.epsilon = 0.5;
  cfg.exploration_budget = exploration_budget(0.5, 100);
  cfg.seed = 4;
  RewardLedger l(4);
  for (std::size_t m = 0; m < 100; ++m) {
    const auto s = select_arm(l, cfg, m);
    CHECK((s.phase == Phase::explore) == (m < 50));
    if (s.phase == Phase::exploit) CHECK(s.arm == *l.best_arm());
    l.record_one(m, s.arm, -0.1 * static_cast<double>(s.arm + 1) / 4.0);
  }
}

TEST_CASE("epsilon-greedy and decreasing explore at the configured rate") {
  const auto l = ledger_with_means({-0.5, -0.1, -0.6, -0.7});
  BanditConfig greedy;
  greedy.strategy = Strategy::epsilon_greedy;
  greedy.epsilon = 0.2;
  greedy.seed = 10;
  std::size_t explored = 0;
  constexpr std::size_t draws = 20'000;
  for (std::size_t m = 0; m < draws; ++m) explored += select_arm(l, greedy, m).phase == Phase::explore;
  const double se = std::sqrt(0.2 * 0.8 / draws);
  CHECK(std::abs(explored / double(draws) - 0.2) < 4 * se);

  auto decreasing = greedy;
  decreasing.strategy = Strategy::epsilon_decreasing;
  std::size_t early = 0, late = 0;
  for (std::size_t m = 0; m < 2000; ++m) early += select_arm(l, decreasing, m).phase == Phase::explore;
  for (std::size_t m = 100'000; m < 102'000; ++m) late += select_arm(l, decreasing, m).phase == Phase::explore;
  CHECK(late < early);

  CHECK(select_arm(RewardLedger(4), greedy, 0).phase == Phase::explore);
}

TEST_CASE("config validation and names") {
  BanditConfig cfg;
  cfg.epsilon = -0.1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.epsilon = 0.5;
  cfg.exploration_budget = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  for (auto s : {Strategy::epsilon_first, Strategy::epsilon_greedy, Strategy::epsilon_decreasing,
                 Strategy::uniform_random})
    CHECK(parse_strategy(to_string(s)) == s);
  CHECK_THROWS_AS(parse_strategy("ucb"), ConfigError);
}
