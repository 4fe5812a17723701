#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "abcmab/pool.hpp"
#include "abcmab/simulator.hpp"
#include "abcmab/trajectory.hpp"

namespace abcmab {

// Batch kernels. Each has a serial reference and an OpenMP version; both
// produce identical output in input order, and both rethrow the exception of
// the lowest failing index.

enum class Execution { serial, parallel };

struct SimTask {
  std::vector<double> theta;
  std::uint64_t seed = 0;
};

std::vector<Trajectory> simulate_batch_serial(const Simulator& sim, std::span<const SimTask> tasks);
std::vector<Trajectory> simulate_batch_parallel(const Simulator& sim, std::span<const SimTask> tasks);

std::vector<std::vector<double>> evaluate_batch_serial(const StatisticPool& pool,
                                                       std::span<const Trajectory> ys);
std::vector<std::vector<double>> evaluate_batch_parallel(const StatisticPool& pool,
                                                         std::span<const Trajectory> ys);

inline std::vector<Trajectory> simulate_batch(const Simulator& sim, std::span<const SimTask> tasks,
                                              Execution exec) {
  return exec == Execution::parallel ? simulate_batch_parallel(sim, tasks)
                                     : simulate_batch_serial(sim, tasks);
}

inline std::vector<std::vector<double>> evaluate_batch(const StatisticPool& pool,
                                                       std::span<const Trajectory> ys, Execution exec) {
  return exec == Execution::parallel ? evaluate_batch_parallel(pool, ys)
                                     : evaluate_batch_serial(pool, ys);
}

/// Number of OpenMP threads available (1 when built without OpenMP).
int max_threads();

}  // namespace abcmab
