// Serial reference versus OpenMP kernels. Run with
//   OMP_NUM_THREADS=N ./bench_batch
// to compare thread counts.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "bargmann/batch.hpp"

using namespace bargmann;

namespace {

std::vector<InitialCondition> kepler_ics(std::size_t n) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  std::vector<InitialCondition> out;
  for (std::size_t k = 0; k < n; ++k) {
    InitialCondition ic;
    ic.r0 = Vec3(1.0 + u(rng), u(rng), u(rng));
    ic.v0 = Vec3(u(rng), 1.0 + u(rng), u(rng));
    ic.t_end = 5.0;
    out.push_back(ic);
  }
  return out;
}

std::vector<ExtendedPoint> sweep_points(std::size_t n) {
  std::mt19937_64 rng(98);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<ExtendedPoint> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back({u(rng), Vec3(u(rng), u(rng), u(rng)), u(rng)});
  return out;
}

void BM_ProjectionSerial(benchmark::State& state) {
  const BargmannMetric metric(Potential::kepler(1.0));
  const auto ics = kepler_ics(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_projection_batch_serial(metric, ics, 1e-3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ProjectionParallel(benchmark::State& state) {
  const BargmannMetric metric(Potential::kepler(1.0));
  const auto ics = kepler_ics(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_projection_batch(metric, ics, 1e-3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = parallel_threads();
}

void BM_SweepSerial(benchmark::State& state) {
  const BargmannMetric metric(Potential::harmonic(1.0));
  const auto pts = sweep_points(static_cast<std::size_t>(state.range(0)));
  SchrodingerParams p;
  p.kappa = 1.0;
  p.omega = Vec3(0, 0, 1);
  const ConformalVectorField field = schrodinger_generator(p);
  for (auto _ : state) benchmark::DoNotOptimize(conformal_sweep_serial(metric, field, pts, {}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepParallel(benchmark::State& state) {
  const BargmannMetric metric(Potential::harmonic(1.0));
  const auto pts = sweep_points(static_cast<std::size_t>(state.range(0)));
  SchrodingerParams p;
  p.kappa = 1.0;
  p.omega = Vec3(0, 0, 1);
  const ConformalVectorField field = schrodinger_generator(p);
  for (auto _ : state) benchmark::DoNotOptimize(conformal_sweep(metric, field, pts, {}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = parallel_threads();
}

}  // namespace

BENCHMARK(BM_ProjectionSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProjectionParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SweepParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond)->UseRealTime();

BENCHMARK_MAIN();
