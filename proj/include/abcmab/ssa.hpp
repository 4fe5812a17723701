#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "abcmab/network.hpp"
#include "abcmab/rng.hpp"
#include "abcmab/trajectory.hpp"

namespace abcmab {

struct SimulationRequest {
  std::vector<double> theta;
  std::uint64_t seed = 0;
  double t_end = 1.0;
  std::size_t n_grid_points = 2;
  // Hard cap on fired reactions; exceeding it is a ModelError.
  std::uint64_t max_events = 200'000'000;
};

/// Gillespie direct method: exponential waiting time from the total
/// propensity, categorical choice of the firing reaction. Propensities are
/// refreshed through the network's dependency graph.
class DirectMethod {
 public:
  DirectMethod(const ReactionNetwork& network, std::span<const double> theta, std::uint64_t seed);

  /// Fires one reaction. Returns false (and leaves the state untouched) when
  /// the total propensity is zero.
  bool step();

  double time() const noexcept { return time_; }
  std::span<const std::int64_t> state() const noexcept { return state_; }
  double total_propensity() const noexcept { return total_; }
  std::uint64_t events() const noexcept { return events_; }

  /// Time of the next event without firing it; +inf when absorbed.
  double peek_next_time();

  /// Fires the reaction drawn by the last peek_next_time() at that time.
  void fire_pending();

 private:
  void refresh(std::size_t r);
  void resum();

  const ReactionNetwork& network_;
  std::vector<double> theta_;
  Rng rng_;
  std::vector<std::int64_t> state_;
  std::vector<double> propensities_;
  double total_ = 0.0;
  double time_ = 0.0;
  std::uint64_t events_ = 0;
  double pending_time_ = 0.0;
  bool has_pending_ = false;
};

/// One exact sample path recorded on the uniform grid of `req`. The value at a
/// grid time is the observable's count after the last event at or before it.
/// Deterministic in (network, theta, seed, grid).
Trajectory simulate(const ReactionNetwork& network, const SimulationRequest& req);

/// Same path, all species: result[s] is the series of species s.
std::vector<Trajectory> simulate_all_species(const ReactionNetwork& network,
                                             const SimulationRequest& req);

}  // namespace abcmab
