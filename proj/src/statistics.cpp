#include "abcmab/statistics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "abcmab/errors.hpp"

namespace abcmab {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::moment: return "moment";
    case Family::quantile: return "quantile";
    case Family::autocorrelation: return "autocorrelation";
    case Family::spectral: return "spectral";
    case Family::mass_quantile: return "mass-quantile";
    case Family::count: return "count";
    case Family::complexity: return "complexity";
  }
  return "unknown";
}

namespace {

double mean_of(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

// Central moment of the given order (population normalization).
double central_moment(std::span<const double> x, double mu, int order) {
  double acc = 0.0;
  for (double v : x) acc += std::pow(v - mu, order);
  return acc / static_cast<double>(x.size());
}

double variance_of(std::span<const double> x) {
  const double mu = mean_of(x);
  double acc = 0.0;
  for (double v : x) acc += (v - mu) * (v - mu);
  return acc / static_cast<double>(x.size());
}

// Linear interpolation between order statistics (numpy's default rule).
double quantile_of(std::span<const double> x, double q) {
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double autocorrelation_of(std::span<const double> x, std::size_t lag) {
  const std::size_t n = x.size();
  if (lag >= n) return 0.0;
  const double mu = mean_of(x);
  const double var = variance_of(x);
  if (var <= 0.0) return 0.0;
  double acc = 0.0;
  for (std::size_t t = 0; t + lag < n; ++t) acc += (x[t] - mu) * (x[t + lag] - mu);
  return acc / (static_cast<double>(n - lag) * var);
}

// Relative index (i + 1) / n of the first point where the cumulative absolute
// mass reaches fraction q of the total.
double mass_quantile_of(std::span<const double> x, double q) {
  double total = 0.0;
  for (double v : x) total += std::abs(v);
  if (total <= 0.0) return 0.0;
  double cum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cum += std::abs(x[i]);
    if (cum / total >= q) return static_cast<double>(i + 1) / static_cast<double>(x.size());
  }
  return 1.0;
}

double abs_sum_of_changes_of(std::span<const double> x) {
  double acc = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) acc += std::abs(x[i] - x[i - 1]);
  return acc;
}

double number_peaks_of(std::span<const double> x, std::size_t support) {
  std::size_t count = 0;
  for (std::size_t i = support; i + support < x.size(); ++i) {
    bool peak = true;
    for (std::size_t j = 1; j <= support && peak; ++j) peak = x[i] > x[i - j] && x[i] > x[i + j];
    if (peak) ++count;
  }
  return static_cast<double>(count);
}

double longest_strike_of(std::span<const double> x, bool above) {
  const double mu = mean_of(x);
  std::size_t best = 0, run = 0;
  for (double v : x) {
    const bool hit = above ? v > mu : v < mu;
    run = hit ? run + 1 : 0;
    best = std::max(best, run);
  }
  return static_cast<double>(best);
}

// Pincus approximate entropy with embedding dimension 2 and tolerance
// r = factor * std(x).
double approximate_entropy_of(std::span<const double> x, double factor) {
  constexpr std::size_t m = 2;
  const std::size_t n = x.size();
  const double sd = std::sqrt(variance_of(x));
  if (n <= m + 1 || sd <= 0.0) return 0.0;
  const double r = factor * sd;
  auto phi = [&](std::size_t len) {
    const std::size_t count = n - len + 1;
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t matches = 0;
      for (std::size_t j = 0; j < count; ++j) {
        bool close = true;
        for (std::size_t k = 0; k < len && close; ++k) close = std::abs(x[i + k] - x[j + k]) <= r;
        matches += close ? 1 : 0;
      }
      acc += std::log(static_cast<double>(matches) / static_cast<double>(count));
    }
    return acc / static_cast<double>(count);
  };
  return std::abs(phi(m) - phi(m + 1));
}

std::string format_param(double p) { return fmt::format("{}", p); }

}  // namespace

std::complex<double> dft_coefficient(std::span<const double> values, std::size_t bin) {
  const std::size_t n = values.size();
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t t = 0; t < n; ++t) {
    // Reduce k*t mod n first so the angle stays small and exact.
    const auto kt = static_cast<double>((bin % n) * t % n);
    const double angle = -2.0 * std::numbers::pi * kt / static_cast<double>(n);
    acc += values[t] * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return acc;
}

double SummaryStatistic::evaluate(std::span<const double> x) const {
  const auto p_index = static_cast<std::size_t>(param);
  switch (feature) {
    case Feature::mean: return mean_of(x);
    case Feature::variance: return variance_of(x);
    case Feature::skewness: {
      const double mu = mean_of(x);
      const double m2 = central_moment(x, mu, 2);
      return m2 > 0.0 ? central_moment(x, mu, 3) / std::pow(m2, 1.5) : 0.0;
    }
    case Feature::kurtosis: {
      const double mu = mean_of(x);
      const double m2 = central_moment(x, mu, 2);
      return m2 > 0.0 ? central_moment(x, mu, 4) / (m2 * m2) - 3.0 : 0.0;
    }
    case Feature::energy: {
      double acc = 0.0;
      for (double v : x) acc += v * v;
      return acc;
    }
    case Feature::minimum: return *std::min_element(x.begin(), x.end());
    case Feature::maximum: return *std::max_element(x.begin(), x.end());
    case Feature::median: return quantile_of(x, 0.5);
    case Feature::quantile: return quantile_of(x, param);
    case Feature::autocorrelation: return autocorrelation_of(x, p_index);
    case Feature::fft_magnitude:
    case Feature::fft_angle: {
      // Only the non-redundant half of the spectrum is exposed.
      if (p_index > x.size() / 2) return 0.0;
      const auto c = dft_coefficient(x, p_index);
      return feature == Feature::fft_magnitude ? std::abs(c) : std::arg(c);
    }
    case Feature::mass_quantile: return mass_quantile_of(x, param);
    case Feature::mean_abs_change:
      return x.size() > 1 ? abs_sum_of_changes_of(x) / static_cast<double>(x.size() - 1) : 0.0;
    case Feature::abs_sum_of_changes: return abs_sum_of_changes_of(x);
    case Feature::number_peaks: return number_peaks_of(x, p_index);
    case Feature::longest_strike_above_mean: return longest_strike_of(x, true);
    case Feature::longest_strike_below_mean: return longest_strike_of(x, false);
    case Feature::approximate_entropy: return approximate_entropy_of(x, param);
  }
  return 0.0;
}

nlohmann::json SummaryStatistic::to_json() const {
  nlohmann::json params = nlohmann::json::object();
  switch (feature) {
    case Feature::quantile:
    case Feature::mass_quantile: params["q"] = param; break;
    case Feature::autocorrelation: params["lag"] = static_cast<int>(param); break;
    case Feature::fft_magnitude: params = {{"bin", static_cast<int>(param)}, {"attr", "abs"}}; break;
    case Feature::fft_angle: params = {{"bin", static_cast<int>(param)}, {"attr", "angle"}}; break;
    case Feature::number_peaks: params["n"] = static_cast<int>(param); break;
    case Feature::approximate_entropy: params = {{"m", 2}, {"r", param}}; break;
    default: break;
  }
  return {{"id", id}, {"family", std::string(to_string(family))}, {"params", params}};
}

SummaryStatistic make_statistic(Feature feature, double param) {
  SummaryStatistic s;
  s.feature = feature;
  s.param = param;
  switch (feature) {
    case Feature::mean: s.id = "mean"; s.family = Family::moment; break;
    case Feature::variance: s.id = "variance"; s.family = Family::moment; break;
    case Feature::skewness: s.id = "skewness"; s.family = Family::moment; break;
    case Feature::kurtosis: s.id = "kurtosis"; s.family = Family::moment; break;
    case Feature::energy: s.id = "abs_energy"; s.family = Family::moment; break;
    case Feature::minimum: s.id = "minimum"; s.family = Family::quantile; break;
    case Feature::maximum: s.id = "maximum"; s.family = Family::quantile; break;
    case Feature::median: s.id = "median"; s.family = Family::quantile; break;
    case Feature::quantile:
      s.id = "quantile__q_" + format_param(param);
      s.family = Family::quantile;
      break;
    case Feature::autocorrelation:
      s.id = "autocorrelation__lag_" + format_param(param);
      s.family = Family::autocorrelation;
      break;
    case Feature::fft_magnitude:
      s.id = "fft_coefficient__attr_abs__coeff_" + format_param(param);
      s.family = Family::spectral;
      break;
    case Feature::fft_angle:
      s.id = "fft_coefficient__attr_angle__coeff_" + format_param(param);
      s.family = Family::spectral;
      break;
    case Feature::mass_quantile:
      s.id = "index_mass_quantile__q_" + format_param(param);
      s.family = Family::mass_quantile;
      break;
    case Feature::mean_abs_change: s.id = "mean_abs_change"; s.family = Family::complexity; break;
    case Feature::abs_sum_of_changes: s.id = "absolute_sum_of_changes"; s.family = Family::complexity; break;
    case Feature::number_peaks:
      s.id = "number_peaks__n_" + format_param(param);
      s.family = Family::count;
      break;
    case Feature::longest_strike_above_mean: s.id = "longest_strike_above_mean"; s.family = Family::count; break;
    case Feature::longest_strike_below_mean: s.id = "longest_strike_below_mean"; s.family = Family::count; break;
    case Feature::approximate_entropy:
      s.id = "approximate_entropy__m_2__r_" + format_param(param);
      s.family = Family::complexity;
      break;
  }
  return s;
}

double evaluate(const SummaryStatistic& stat, const Trajectory& y) {
  if (y.empty()) throw InputError(fmt::format("statistic '{}' on empty trajectory", stat.id));
  for (double v : y.values)
    if (!std::isfinite(v)) throw InputError(fmt::format("statistic '{}' on non-finite series", stat.id));
  return stat.evaluate(y.values);
}

const std::vector<SummaryStatistic>& statistic_catalog() {
  static const std::vector<SummaryStatistic> catalog = [] {
    std::vector<SummaryStatistic> c;
    for (auto f : {Feature::mean, Feature::variance, Feature::skewness, Feature::kurtosis,
                   Feature::energy, Feature::minimum, Feature::maximum, Feature::median})
      c.push_back(make_statistic(f));
    for (int q = 1; q <= 9; ++q) c.push_back(make_statistic(Feature::quantile, q / 10.0));
    for (int lag = 1; lag <= 50; ++lag) c.push_back(make_statistic(Feature::autocorrelation, lag));
    for (int bin = 0; bin < 64; ++bin) c.push_back(make_statistic(Feature::fft_magnitude, bin));
    // The angle of bin 0 is identically 0 for non-negative series.
    for (int bin = 1; bin < 64; ++bin) c.push_back(make_statistic(Feature::fft_angle, bin));
    for (int q = 1; q <= 9; ++q) c.push_back(make_statistic(Feature::mass_quantile, q / 10.0));
    c.push_back(make_statistic(Feature::mean_abs_change));
    c.push_back(make_statistic(Feature::abs_sum_of_changes));
    for (int n : {1, 3, 5}) c.push_back(make_statistic(Feature::number_peaks, n));
    c.push_back(make_statistic(Feature::longest_strike_above_mean));
    c.push_back(make_statistic(Feature::longest_strike_below_mean));
    for (double r : {0.1, 0.3, 0.5}) c.push_back(make_statistic(Feature::approximate_entropy, r));
    return c;
  }();
  return catalog;
}

const SummaryStatistic& find_statistic(std::string_view id) {
  for (const auto& s : statistic_catalog())
    if (s.id == id) return s;
  throw LookupError(fmt::format("unknown statistic '{}'", id));
}

}  // namespace abcmab
