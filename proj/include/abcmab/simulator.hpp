#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "abcmab/network.hpp"
#include "abcmab/trajectory.hpp"

namespace abcmab {

/// f(theta, V) -> y, with the seed standing in for V. Implementations must be
/// deterministic in (theta, seed) and safe to call concurrently.
using Simulator = std::function<Trajectory(std::span<const double> theta, std::uint64_t seed)>;

/// SSA simulator for `network`, recording its observable on a uniform grid.
Simulator network_simulator(ReactionNetwork network, double t_end, std::size_t n_grid_points);

}  // namespace abcmab
