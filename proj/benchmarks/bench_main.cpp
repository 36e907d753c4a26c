#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "mero/construct.hpp"
#include "mero/julia.hpp"
#include "mero/map.hpp"

namespace {

void BM_EvalExpOverZ(benchmark::State& state) {
  const auto f = mero::parse_map("exp(z)/z", {{0.0, 1}});
  std::vector<mero::Complex> pts = mero::cell_centers({-5, 5, -5, 5}, 100, 100);
  for (auto _ : state) {
    double acc = 0.0;
    for (mero::Complex z : pts) acc += f(z).modulus();
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
}
BENCHMARK(BM_EvalExpOverZ);

void BM_CircleModulus(benchmark::State& state) {
  const auto f = mero::parse_map("exp(z)+1/z", {{0.0, 1}});
  for (auto _ : state) benchmark::DoNotOptimize(mero::circle_modulus(f, 10.0, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CircleModulus)->Arg(4096)->Arg(65536);

void BM_RenderSquare(benchmark::State& state) {
  const auto f = mero::parse_map("z^2", {});
  mero::GridSpec grid{{-2, 2, -2, 2}, static_cast<int>(state.range(0)), static_cast<int>(state.range(0))};
  mero::RenderParams params;
  params.workers = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(mero::render(f, grid, params));
}
BENCHMARK(BM_RenderSquare)->Args({128, 1})->Args({128, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_FitEntire(benchmark::State& state) {
  const auto config = mero::build_configuration(0.1, {3.0, 4.0, 5.0});
  for (auto _ : state) benchmark::DoNotOptimize(mero::fit_entire(config, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_FitEntire)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
