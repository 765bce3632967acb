// OpenMP kernels against their serial references. Run with OMP_NUM_THREADS
// set to compare scaling.

#include <benchmark/benchmark.h>

#include <vector>

#include "catenoid/otsuki.hpp"
#include "catenoid/profile.hpp"
#include "catenoid/simons.hpp"
#include "catenoid/spaceform.hpp"

using namespace catenoid;

namespace {

std::vector<double> sweep_grid(int n, int count) {
  const double hi = otsuki::clifford_value(n) - 1e-4;
  std::vector<double> as(count);
  for (int i = 0; i < count; ++i) as[i] = 1e-3 + (hi - 1e-3) * i / (count - 1);
  return as;
}

void BM_PeriodSweep(benchmark::State& state) {
  const auto as = sweep_grid(3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(otsuki::period_sweep(3, as));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PeriodSweepReference(benchmark::State& state) {
  const auto as = sweep_grid(3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(otsuki::period_sweep_reference(3, as));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_IdentityTrials(benchmark::State& state) {
  const int trials = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simons::identity_trials(5, trials, 7));
  state.SetItemsProcessed(state.iterations() * trials);
}

void BM_IdentityTrialsReference(benchmark::State& state) {
  const int trials = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(simons::identity_trials_reference(5, trials, 7));
  }
  state.SetItemsProcessed(state.iterations() * trials);
}

struct ProfileFixture {
  SpaceForm sf{-1.0, 4};
  NeckParam k{profile_constant(sf, 0.5)};
  std::vector<ProfilePoint> points;

  explicit ProfileFixture(double step) {
    ProfileOptions opts;
    opts.output_step = step;
    points = integrate_profile(sf, k, 4.0, opts);
  }
};

void BM_SimonsResidual(benchmark::State& state) {
  const ProfileFixture f(4.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(simons::simons_residual(f.sf, f.k, f.points));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.points.size()));
}

void BM_SimonsResidualReference(benchmark::State& state) {
  const ProfileFixture f(4.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(simons::simons_residual_reference(f.sf, f.k, f.points));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.points.size()));
}

}  // namespace

BENCHMARK(BM_PeriodSweep)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PeriodSweepReference)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IdentityTrials)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IdentityTrialsReference)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimonsResidual)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimonsResidualReference)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
