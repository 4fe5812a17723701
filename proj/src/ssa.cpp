#include "abcmab/ssa.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

#include "abcmab/errors.hpp"

namespace abcmab {

namespace {

void validate_request(const ReactionNetwork& network, const SimulationRequest& req) {
  if (req.theta.size() != network.num_parameters())
    throw InputError(fmt::format("network '{}' takes {} parameters, got {}", network.name(),
                                 network.num_parameters(), req.theta.size()));
  for (std::size_t i = 0; i < req.theta.size(); ++i)
    if (!(req.theta[i] >= 0.0) || !std::isfinite(req.theta[i]))
      throw InputError(fmt::format("parameter '{}' must be finite and non-negative",
                                   network.parameter_names()[i]));
  if (req.n_grid_points == 0) throw InputError("n_grid_points must be positive");
}

}  // namespace

DirectMethod::DirectMethod(const ReactionNetwork& network, std::span<const double> theta,
                           std::uint64_t seed)
    : network_(network),
      theta_(theta.begin(), theta.end()),
      rng_(seed),
      state_(network.initial_state()),
      propensities_(network.reactions().size(), 0.0) {
  for (std::size_t r = 0; r < propensities_.size(); ++r) refresh(r);
  resum();
}

void DirectMethod::refresh(std::size_t r) { propensities_[r] = network_.propensity(r, state_, theta_); }

void DirectMethod::resum() {
  total_ = 0.0;
  for (double a : propensities_) total_ += a;
}

double DirectMethod::peek_next_time() {
  if (!has_pending_) {
    if (!(total_ > 0.0)) return std::numeric_limits<double>::infinity();
    pending_time_ = time_ + rng_.exponential(total_);
    has_pending_ = true;
  }
  return pending_time_;
}

void DirectMethod::fire_pending() {
  has_pending_ = false;
  const double target = rng_.uniform() * total_;
  std::size_t chosen = propensities_.size();
  double acc = 0.0;
  for (std::size_t r = 0; r < propensities_.size(); ++r) {
    if (propensities_[r] <= 0.0) continue;
    acc += propensities_[r];
    chosen = r;
    if (target < acc) break;
  }
  // Rounding can leave target >= acc; `chosen` is then the last live reaction.
  for (const auto& t : network_.net_change(chosen)) state_[t.species] += t.count;
  for (std::size_t dep : network_.dependents(chosen)) refresh(dep);
  resum();
  time_ = pending_time_;
  ++events_;
}

bool DirectMethod::step() {
  if (!std::isfinite(peek_next_time())) return false;
  fire_pending();
  return true;
}

namespace {

template <typename Record>
void run_on_grid(const ReactionNetwork& network, const SimulationRequest& req,
                 const std::vector<double>& grid, Record&& record) {
  DirectMethod ssa(network, req.theta, req.seed);
  std::size_t g = 0;
  while (g < grid.size()) {
    const double next = ssa.peek_next_time();
    while (g < grid.size() && grid[g] < next) record(g++, ssa.state());
    if (g == grid.size()) break;
    if (ssa.events() >= req.max_events)
      throw ModelError(fmt::format("network '{}' exceeded {} events before t_end", network.name(),
                                   req.max_events));
    ssa.fire_pending();
  }
}

}  // namespace

Trajectory simulate(const ReactionNetwork& network, const SimulationRequest& req) {
  validate_request(network, req);
  Trajectory y;
  y.times = uniform_grid(req.t_end, req.n_grid_points);
  y.values.resize(y.times.size());
  const std::size_t obs = network.observable();
  run_on_grid(network, req, y.times, [&](std::size_t g, std::span<const std::int64_t> state) {
    y.values[g] = static_cast<double>(state[obs]);
  });
  return y;
}

std::vector<Trajectory> simulate_all_species(const ReactionNetwork& network,
                                             const SimulationRequest& req) {
  validate_request(network, req);
  const auto grid = uniform_grid(req.t_end, req.n_grid_points);
  std::vector<Trajectory> out(network.species().size(), Trajectory{grid, std::vector<double>(grid.size())});
  run_on_grid(network, req, grid, [&](std::size_t g, std::span<const std::int64_t> state) {
    for (std::size_t s = 0; s < state.size(); ++s) out[s].values[g] = static_cast<double>(state[s]);
  });
  return out;
}

}  // namespace abcmab
