#include <benchmark/benchmark.h>

#include "fewbody/coordinate_interference.hpp"
#include "fewbody/momentum_interference.hpp"

using namespace fewbody;

static void BM_PdfSqi3Body(benchmark::State& state) {
  const ScatteringScenario s = make_three_body(1.0, 1.0, 2.0, 0.0, 1.0, Model::sqi);
  double x3 = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pdf_sqi_3body(s, 0.3, 0.0, x3));
    x3 += 1e-3;
  }
}
BENCHMARK(BM_PdfSqi3Body);

static void BM_CoordinateMarginal(benchmark::State& state) {
  const Model model = state.range(0) == 0 ? Model::sqi : Model::cqi;
  const ScatteringScenario s = make_three_body(1.0, 1.0, 1.0, 0.0, 2.0, model);
  const auto x1 = linspace(-3.0, 3.0, 16);
  MarginalOptions opt = default_marginal_window(s);
  opt.samples = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(marginal_particle_pdf(model, s, x1, opt));
}
BENCHMARK(BM_CoordinateMarginal)->ArgsProduct({{0, 1}, {101, 401}})->Unit(benchmark::kMillisecond);

static void BM_P1FringeVisibility(benchmark::State& state) {
  MomentumScenario s;
  s.dp_scatterer = 0.5;
  s.v = 0.3;
  const Model model = state.range(0) == 0 ? Model::sqi : Model::cqi;
  for (auto _ : state) benchmark::DoNotOptimize(p1_fringe_visibility(model, s));
}
BENCHMARK(BM_P1FringeVisibility)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
