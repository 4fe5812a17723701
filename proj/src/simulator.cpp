#include "abcmab/simulator.hpp"

#include <memory>

#include "abcmab/ssa.hpp"

namespace abcmab {

Simulator network_simulator(ReactionNetwork network, double t_end, std::size_t n_grid_points) {
  auto shared = std::make_shared<const ReactionNetwork>(std::move(network));
  return [shared, t_end, n_grid_points](std::span<const double> theta, std::uint64_t seed) {
    SimulationRequest req;
    req.theta.assign(theta.begin(), theta.end());
    req.seed = seed;
    req.t_end = t_end;
    req.n_grid_points = n_grid_points;
    return simulate(*shared, req);
  };
}

}  // namespace abcmab
