// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include <vector>

#include <benchmark/benchmark.h>

#include "bcuav/parallel/kernels.hpp"

using namespace bcuav;

namespace {

template <auto Kernel>
void BM_GainSurface(benchmark::State& state) {
  const auto engine = fuzzy::MamdaniEngine::normalized();
  const auto& table = fuzzy::RuleSet::builtin().kp;
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(engine, table, n));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}

template <auto Kernel>
void BM_RunBatch(benchmark::State& state) {
  experiment::ExperimentConfig base;
  base.duration = 60.0;
  std::vector<parallel::BatchJob> jobs;
  for (std::uint64_t seed = 1; seed <= static_cast<std::uint64_t>(state.range(0)); ++seed) {
    jobs.push_back({experiment::RunMode::Shared, seed});
  }
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(base, jobs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_GainSurface<parallel::gain_surface_serial>)->Name("gain_surface/serial")->Arg(101)->Arg(301);
BENCHMARK(BM_GainSurface<parallel::gain_surface>)->Name("gain_surface/openmp")->Arg(101)->Arg(301)->UseRealTime();
BENCHMARK(BM_RunBatch<parallel::run_batch_serial>)->Name("run_batch/serial")->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunBatch<parallel::run_batch>)
    ->Name("run_batch/openmp")
    ->Arg(8)
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
