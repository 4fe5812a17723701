#include "abcmab/prior.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "abcmab/errors.hpp"
#include "abcmab/rng.hpp"

namespace abcmab {

Prior Prior::box(std::vector<double> lower, std::vector<double> upper) {
  if (lower.empty() || lower.size() != upper.size())
    throw ConfigError("prior bounds must be non-empty and of equal length");
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (!(lower[i] <= upper[i]))
      throw ConfigError(fmt::format("prior dimension {}: lower {} exceeds upper {}", i, lower[i], upper[i]));
  Prior p;
  p.lower_ = std::move(lower);
  p.upper_ = std::move(upper);
  return p;
}

Prior Prior::grid(std::vector<std::vector<double>> points) {
  if (points.empty() || points.front().empty()) throw ConfigError("grid prior needs points");
  for (const auto& pt : points)
    if (pt.size() != points.front().size()) throw ConfigError("grid prior points differ in dimension");
  Prior p;
  p.lower_ = p.upper_ = points.front();
  for (const auto& pt : points)
    for (std::size_t i = 0; i < pt.size(); ++i) {
      p.lower_[i] = std::min(p.lower_[i], pt[i]);
      p.upper_[i] = std::max(p.upper_[i], pt[i]);
    }
  p.points_ = std::move(points);
  return p;
}

std::size_t Prior::dim() const noexcept { return lower_.size(); }

bool Prior::contains(std::span<const double> theta) const {
  if (theta.size() != dim()) return false;
  if (is_grid()) return std::any_of(points_.begin(), points_.end(), [&](const auto& pt) {
      return std::equal(pt.begin(), pt.end(), theta.begin());
    });
  for (std::size_t i = 0; i < dim(); ++i)
    if (theta[i] < lower_[i] || theta[i] > upper_[i]) return false;
  return true;
}

std::vector<double> Prior::midpoint() const {
  std::vector<double> mid(dim());
  for (std::size_t i = 0; i < dim(); ++i) mid[i] = 0.5 * (lower_[i] + upper_[i]);
  return mid;
}

nlohmann::json Prior::to_json() const {
  if (is_grid()) return {{"kind", "grid"}, {"points", points_}};
  return {{"kind", "box"}, {"lower", lower_}, {"upper", upper_}};
}

Prior Prior::from_json(const nlohmann::json& doc) {
  try {
    if (doc.value("kind", std::string("box")) == "grid")
      return grid(doc.at("points").get<std::vector<std::vector<double>>>());
    return box(doc.at("lower").get<std::vector<double>>(), doc.at("upper").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("malformed prior: {}", e.what()));
  }
}

std::vector<double> sample_prior(const Prior& prior, std::uint64_t seed) {
  Rng rng(seed);
  if (prior.is_grid()) return prior.points()[rng.index(prior.points().size())];
  std::vector<double> theta(prior.dim());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double lo = prior.lower()[i], hi = prior.upper()[i];
    theta[i] = lo == hi ? lo : rng.uniform(lo, hi);
  }
  return theta;
}

Prior builtin_prior(std::string_view model) {
  if (model == "vilar_oscillator")
    return Prior::box({30, 200, 0, 30, 30, 1, 1, 0, 0, 0, 0.5, 0.5, 1, 30, 80},
                      {70, 600, 1, 70, 70, 10, 12, 1, 2, 0.5, 1.5, 1.5, 3, 70, 120});
  if (model == "birth_death") return Prior::box({0, 0}, {20, 2});
  if (model == "dimerization") return Prior::box({0, 0, 0, 0}, {20, 0.1, 1, 1});
  if (model == "lotka_volterra") return Prior::box({0.5, 0.002, 0.3}, {1.5, 0.01, 1.0});
  throw LookupError(fmt::format("no builtin prior for model '{}'", model));
}

std::vector<double> builtin_truth(std::string_view model) {
  if (model == "vilar_oscillator")
    return {50, 500, 0.01, 50, 50, 5, 10, 0.5, 1, 0.2, 1, 1, 2, 50, 100};
  if (model == "birth_death") return {10, 1};
  if (model == "dimerization") return {10, 0.05, 0.5, 0.2};
  if (model == "lotka_volterra") return {1, 0.005, 0.6};
  throw LookupError(fmt::format("no reference parameters for model '{}'", model));
}

}  // namespace abcmab
