#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "abcmab/errors.hpp"
#include "abcmab/rng.hpp"
#include "abcmab/statistics.hpp"

using namespace abcmab;

namespace {

std::vector<double> random_series(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = 5.0 + 2.0 * rng.normal();
  return x;
}

Trajectory as_trajectory(std::vector<double> values) {
  Trajectory y;
  y.times = uniform_grid(static_cast<double>(values.size()), values.size());
  y.values = std::move(values);
  return y;
}

double eval(std::string_view id, const std::vector<double>& x) {
  return find_statistic(id).evaluate(x);
}

std::string fmt_lag(int lag) { return "autocorrelation__lag_" + std::to_string(lag); }

}  // namespace

TEST_CASE("basic examples") {
  CHECK(eval("mean", {5, 5, 5, 5}) == 5.0);
  CHECK(eval("fft_coefficient__attr_abs__coeff_3", std::vector<double>(16, 7.0)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(eval("index_mass_quantile__q_0.5", {1, 1, 1, 1}) == 0.5);
}

TEST_CASE("hand-computed values") {
  const std::vector<double> x{1, 2, 3, 4};
  CHECK(eval("variance", x) == doctest::Approx(1.25));
  CHECK(eval("abs_energy", x) == 30.0);
  CHECK(eval("median", x) == 2.5);
  CHECK(eval("quantile__q_0.1", x) == doctest::Approx(1.3));
  CHECK(eval("mean_abs_change", x) == 1.0);
  CHECK(eval("absolute_sum_of_changes", x) == 3.0);
  CHECK(eval("skewness", x) == doctest::Approx(0.0));
  // Excess kurtosis of 1..4 with population moments: 2.5625 / 1.5625 - 3.
  CHECK(eval("kurtosis", x) == doctest::Approx(2.5625 / 1.5625 - 3.0));
  CHECK(eval("autocorrelation__lag_1", x) == doctest::Approx((-1.5 * -0.5 + -0.5 * 0.5 + 0.5 * 1.5) / (3 * 1.25)));
  CHECK(eval("longest_strike_above_mean", {0, 5, 5, 0, 5, 5, 5}) == 3.0);
  CHECK(eval("longest_strike_below_mean", {0, 0, 5, 5, 0, 5, 5}) == 2.0);
  CHECK(eval("number_peaks__n_1", {0, 3, 0, 1, 4, 1, 0}) == 2.0);
  CHECK(eval("number_peaks__n_3", {0, 1, 2, 5, 2, 1, 0}) == 1.0);
  CHECK(eval("index_mass_quantile__q_0.3", {0, 0, 10, 0}) == 0.75);
  CHECK(eval("fft_coefficient__attr_abs__coeff_0", x) == doctest::Approx(10.0));
  // X_1 of 1..4 is -2 + 2i.
  CHECK(eval("fft_coefficient__attr_abs__coeff_1", x) == doctest::Approx(std::sqrt(8.0)));
  CHECK(eval("fft_coefficient__attr_angle__coeff_1", x) == doctest::Approx(3 * std::numbers::pi / 4));
}

TEST_CASE("degenerate inputs evaluate to zero") {
  const std::vector<double> c(20, 3.0);
  for (auto id : {"autocorrelation__lag_1", "skewness", "kurtosis", "approximate_entropy__m_2__r_0.1",
                  "fft_coefficient__attr_abs__coeff_12"})
    CHECK(eval(id, c) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(eval("index_mass_quantile__q_0.5", std::vector<double>(5, 0.0)) == 0.0);
  CHECK(eval("fft_coefficient__attr_abs__coeff_40", random_series(50, 1)) == 0.0);
  CHECK(eval("autocorrelation__lag_50", random_series(10, 1)) == 0.0);
}

TEST_CASE("every catalog statistic is finite on random and constant series") {
  const auto x = random_series(120, 4);
  const std::vector<double> one{2.0};
  for (const auto& s : statistic_catalog()) {
    INFO(s.id);
    CHECK(std::isfinite(s.evaluate(x)));
    CHECK(std::isfinite(s.evaluate(one)));
  }
}

TEST_CASE("Parseval identity over the full spectrum") {
  const auto x = random_series(64, 9);
  double time_energy = 0.0;
  for (double v : x) time_energy += v * v;
  double freq_energy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) freq_energy += std::norm(dft_coefficient(x, k));
  CHECK(std::abs(freq_energy - 64.0 * time_energy) <= 1e-9 * 64.0 * time_energy);
}

TEST_CASE("translation and scale properties") {
  const auto x = random_series(200, 21);
  const double c = 13.5, a = 4.0;
  std::vector<double> shifted(x), scaled(x);
  for (auto& v : shifted) v += c;
  for (auto& v : scaled) v *= a;
  CHECK(eval("mean", shifted) == doctest::Approx(eval("mean", x) + c));
  CHECK(eval("variance", shifted) == doctest::Approx(eval("variance", x)));
  for (int lag : {1, 7, 30})
    CHECK(eval(fmt_lag(lag), scaled) == doctest::Approx(eval(fmt_lag(lag), x)));
}

TEST_CASE("mass quantile is monotone in q") {
  const auto x = random_series(150, 33);
  double prev = 0.0;
  for (int q = 1; q <= 9; ++q) {
    const double v = make_statistic(Feature::mass_quantile, q / 10.0).evaluate(x);
    CHECK(v >= prev);
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }
}

TEST_CASE("catalog has unique ids and round-trips by lookup") {
  const auto& cat = statistic_catalog();
  CHECK(cat.size() >= 200);
  std::set<std::string> ids;
  for (const auto& s : cat) {
    ids.insert(s.id);
    CHECK(&find_statistic(s.id) == &s);
    const auto j = s.to_json();
    CHECK(j["id"] == s.id);
  }
  CHECK(ids.size() == cat.size());
  CHECK_THROWS_AS(find_statistic("nope"), LookupError);
}

TEST_CASE("trajectory evaluation validates input") {
  CHECK_THROWS_AS(evaluate(find_statistic("mean"), Trajectory{}), InputError);
  auto y = as_trajectory({1.0, std::nan(""), 2.0});
  CHECK_THROWS_AS(evaluate(find_statistic("mean"), y), InputError);
  CHECK(evaluate(find_statistic("maximum"), as_trajectory({1, 9, 2})) == 9.0);
}
