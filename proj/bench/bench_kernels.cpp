#include <benchmark/benchmark.h>

#include "abcmab/kernels.hpp"
#include "abcmab/models.hpp"
#include "abcmab/pool.hpp"
#include "abcmab/prior.hpp"
#include "abcmab/rng.hpp"
#include "abcmab/simulator.hpp"

using namespace abcmab;

namespace {

std::vector<SimTask> make_tasks(const Prior& prior, std::size_t n) {
  std::vector<SimTask> tasks;
  for (std::size_t i = 0; i < n; ++i)
    tasks.push_back({sample_prior(prior, derive_seed(1, Stream::prior, i)), derive_seed(1, Stream::simulator, i)});
  return tasks;
}

void BM_SimulateVilar(benchmark::State& state, Execution exec) {
  const auto sim = network_simulator(builtin_model("vilar_oscillator"), 50.0, 200);
  const auto tasks = make_tasks(builtin_prior("vilar_oscillator"), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_batch(sim, tasks, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EvaluatePool(benchmark::State& state, Execution exec) {
  const auto sim = network_simulator(builtin_model("vilar_oscillator"), 200.0, 200);
  const auto tasks = make_tasks(builtin_prior("vilar_oscillator"), 16);
  const auto ys = simulate_batch_serial(sim, tasks);
  const auto pool = standard_pool(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_batch(pool, ys, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ys.size()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_SimulateVilar, serial, Execution::serial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SimulateVilar, parallel, Execution::parallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EvaluatePool, serial, Execution::serial)->Arg(10)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EvaluatePool, parallel, Execution::parallel)->Arg(10)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
