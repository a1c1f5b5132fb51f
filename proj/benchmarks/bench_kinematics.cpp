#include <benchmark/benchmark.h>

#include "fewbody/kinematics.hpp"

using namespace fewbody;

static void BM_TwoBodyRecoil(benchmark::State& state) {
  double M = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_two_body_recoil(1.0, 1.0, M, 0.0));
    M = M < 1e3 ? M * 1.01 : 1.0;
  }
}
BENCHMARK(BM_TwoBodyRecoil);

static void BM_CollectiveRecoil(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_collective_recoil(1.0, 1.0, 3.0, 0.2, 2));
}
BENCHMARK(BM_CollectiveRecoil);

static void BM_UnequalScattererNewton(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_unequal_scatterer_recoil(1.0, 1.0, 1.0, 0.0, 30.0, 0.1));
}
BENCHMARK(BM_UnequalScattererNewton);

static void BM_EnsembleConservation(benchmark::State& state) {
  EnsembleSpec spec;
  spec.N_s = 2;
  spec.V_p = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_ensemble_conservation(spec));
}
BENCHMARK(BM_EnsembleConservation);
