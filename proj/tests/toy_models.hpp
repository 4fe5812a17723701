#pragma once

// Test-only models shared by unit and acceptance tests.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "abcmab/network.hpp"
#include "abcmab/rng.hpp"
#include "abcmab/simulator.hpp"
#include "abcmab/trajectory.hpp"

namespace abcmab::testing {

/// y_t ~ N(theta[0], 1), t = 0..n-1.
inline Simulator gaussian_simulator(std::size_t n) {
  return [n](std::span<const double> theta, std::uint64_t seed) {
    Rng rng(seed);
    Trajectory y;
    y.times.resize(n);
    y.values.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
      y.times[t] = static_cast<double>(t);
      y.values[t] = theta[0] + rng.normal();
    }
    return y;
  };
}

/// Two-state switch: off -> on at rate k_on, on -> off at rate k_off.
/// Observable is the `on` indicator, so its state space is {0, 1}.
inline ReactionNetwork two_state_switch() {
  std::vector<Reaction> rx(2);
  rx[0].name = "switch_on";
  rx[0].rate_param = 0;
  rx[0].reactants = {{0, 1}};
  rx[0].products = {{1, 1}};
  rx[0].kind = PropensityKind::first_order;
  rx[1].name = "switch_off";
  rx[1].rate_param = 1;
  rx[1].reactants = {{1, 1}};
  rx[1].products = {{0, 1}};
  rx[1].kind = PropensityKind::first_order;
  return ReactionNetwork("two_state", {{"off", 1}, {"on", 0}}, {"k_on", "k_off"}, rx, 1);
}

/// Birth-death network with a chosen initial population.
inline ReactionNetwork birth_death_from(std::int64_t initial) {
  std::vector<Reaction> rx(2);
  rx[0].name = "birth";
  rx[0].rate_param = 0;
  rx[0].products = {{0, 1}};
  rx[0].kind = PropensityKind::zeroth;
  rx[1].name = "death";
  rx[1].rate_param = 1;
  rx[1].reactants = {{0, 1}};
  rx[1].kind = PropensityKind::first_order;
  return ReactionNetwork("birth_death", {{"X", initial}}, {"lambda", "mu"}, rx, 0);
}

}  // namespace abcmab::testing
