#include <benchmark/benchmark.h>

#include "fewbody/oracle.hpp"

using namespace fewbody;

static void BM_ReflectionSpectrum(benchmark::State& state) {
  const DoubleDeltaPotential pot = DoubleDeltaPotential::from_masses(1.0, 5.0, 0.05, 30.0);
  const auto samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reflection_spectrum(0.6, 1.4, samples, pot));
}
BENCHMARK(BM_ReflectionSpectrum)->Arg(201)->Arg(801)->Unit(benchmark::kMillisecond);

static void BM_SplitStepEvolution(benchmark::State& state) {
  const Grid1D grid{static_cast<std::size_t>(state.range(0)), 0.25};
  const RegularizedPotential pot = regularize({0.05, 10.0, 1.0}, 0.5);
  const WavepacketState psi = gaussian_wavepacket(grid, -0.25 * grid.length(), 1.0, 8.0);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_wavepacket(pot, psi, 0.03, 100));
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_SplitStepEvolution)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);
