#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "abcmab/trajectory.hpp"

namespace abcmab {

enum class Family { moment, quantile, autocorrelation, spectral, mass_quantile, count, complexity };

std::string_view to_string(Family family);

enum class Feature {
  mean,
  variance,
  skewness,
  kurtosis,
  energy,
  minimum,
  maximum,
  median,
  quantile,
  autocorrelation,
  fft_magnitude,
  fft_angle,
  mass_quantile,
  mean_abs_change,
  abs_sum_of_changes,
  number_peaks,
  longest_strike_above_mean,
  longest_strike_below_mean,
  approximate_entropy,
};

/// A scalar feature of a series. `param` carries the family-specific knob
/// (quantile level, lag, FFT bin, peak support, tolerance factor); it is
/// ignored by parameterless features.
struct SummaryStatistic {
  std::string id;
  Family family = Family::moment;
  Feature feature = Feature::mean;
  double param = 0.0;

  /// Finite for every finite non-empty input. Undefined cases (constant
  /// series for autocorrelation and entropy, out-of-range FFT bins, zero
  /// mass) evaluate to 0.
  double evaluate(std::span<const double> values) const;

  nlohmann::json to_json() const;
};

SummaryStatistic make_statistic(Feature feature, double param = 0.0);

/// Throws InputError on an empty trajectory or non-finite values.
double evaluate(const SummaryStatistic& stat, const Trajectory& y);

/// Full catalog in a fixed order (currently 213 statistics).
const std::vector<SummaryStatistic>& statistic_catalog();

/// Looks up a catalog entry by id; throws LookupError.
const SummaryStatistic& find_statistic(std::string_view id);

/// Single DFT coefficient X_k = sum_t x_t exp(-2 pi i k t / n).
std::complex<double> dft_coefficient(std::span<const double> values, std::size_t bin);

}  // namespace abcmab
