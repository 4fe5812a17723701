#include "abcmab/kernels.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace abcmab {

namespace {

void rethrow_first(const std::vector<std::exception_ptr>& errors) {
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<Trajectory> simulate_batch_serial(const Simulator& sim, std::span<const SimTask> tasks) {
  std::vector<Trajectory> out;
  out.reserve(tasks.size());
  for (const auto& t : tasks) out.push_back(sim(t.theta, t.seed));
  return out;
}

std::vector<Trajectory> simulate_batch_parallel(const Simulator& sim, std::span<const SimTask> tasks) {
  const auto n = static_cast<std::ptrdiff_t>(tasks.size());
  std::vector<Trajectory> out(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = sim(tasks[i].theta, tasks[i].seed);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  rethrow_first(errors);
  return out;
}

std::vector<std::vector<double>> evaluate_batch_serial(const StatisticPool& pool,
                                                       std::span<const Trajectory> ys) {
  std::vector<std::vector<double>> out;
  out.reserve(ys.size());
  for (const auto& y : ys) out.push_back(evaluate_pool(pool, y));
  return out;
}

std::vector<std::vector<double>> evaluate_batch_parallel(const StatisticPool& pool,
                                                         std::span<const Trajectory> ys) {
  const auto n = static_cast<std::ptrdiff_t>(ys.size());
  std::vector<std::vector<double>> out(ys.size());
  std::vector<std::exception_ptr> errors(ys.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = evaluate_pool(pool, ys[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  rethrow_first(errors);
  return out;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace abcmab
