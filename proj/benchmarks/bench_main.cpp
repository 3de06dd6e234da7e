#include <benchmark/benchmark.h>

#include "obtk/geometry.hpp"
#include "obtk/norms.hpp"
#include "obtk/quadrature.hpp"
#include "obtk/young.hpp"

namespace {

void BM_Admissibility(benchmark::State& state) {
  const auto f = obtk::YoungFunction::power_log(1.5, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(obtk::admissible(f, -1.0, 2));
}
BENCHMARK(BM_Admissibility)->Unit(benchmark::kMillisecond);

void BM_SamplePairs(benchmark::State& state) {
  const auto dom = obtk::Domain::ball({0.0, 0.0}, 1.0);
  obtk::QuadratureSpec spec;
  spec.n_outer = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(obtk::sample_pairs(dom, spec));
  state.SetItemsProcessed(state.iterations() * spec.n_outer * spec.n_radial);
}
BENCHMARK(BM_SamplePairs)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

// Luxemburg bisection on a frozen sample; the pair draw is outside the loop.
void BM_BesovSeminorm(benchmark::State& state) {
  const auto dom = obtk::Domain::box({0.0, 0.0}, {1.0, 1.0});
  const auto u = obtk::ScalarField::gaussian({0.5, 0.5}, 0.2);
  const obtk::PairDifferences pd(u, dom, obtk::QuadratureSpec{});
  const auto f = obtk::YoungFunction::power(1.5);
  for (auto _ : state) benchmark::DoNotOptimize(obtk::besov_seminorm(pd, f, -1.0));
}
BENCHMARK(BM_BesovSeminorm)->Unit(benchmark::kMillisecond);

void BM_RegularityConstant(benchmark::State& state) {
  const auto dom = obtk::Domain::cusp(2.0);
  obtk::QuadratureSpec spec;
  spec.n_measure = 4096;
  for (auto _ : state) benchmark::DoNotOptimize(obtk::regularity_constant(dom, 16, 12, spec));
}
BENCHMARK(BM_RegularityConstant)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
