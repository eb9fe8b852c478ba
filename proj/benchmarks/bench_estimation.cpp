#include <benchmark/benchmark.h>

#include "radial/distribution.hpp"
#include "radial/estimation.hpp"

using namespace radial;

namespace {

void BM_MleLocation(benchmark::State& state) {
  const Manifold m = state.range(0) == 0 ? Manifold::sphere(2) : Manifold::hyperbolic(2);
  const auto p = RadialProfile::make(
      state.range(0) == 0 ? ProfileKind::kVonMisesFisher : ProfileKind::kGaussian, 2.0);
  const SampleSet s = RadialDistribution(m, m.origin(), p).sample(
      static_cast<std::size_t>(state.range(1)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(mle_location(s, p));
  state.SetLabel(m.name());
}
BENCHMARK(BM_MleLocation)
    ->ArgsProduct({{0, 1}, {100, 10000}})
    ->Unit(benchmark::kMillisecond);

void BM_MleTemperature(benchmark::State& state) {
  const Manifold s2 = Manifold::sphere(2);
  const auto p = RadialProfile::make(ProfileKind::kVonMisesFisher, 3.0);
  const SampleSet s = RadialDistribution(s2, s2.origin(), p).sample(10000, 12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mle_temperature(s, s2.origin(), p.with_beta(1.0), 1e-3, 1e3));
  }
}
BENCHMARK(BM_MleTemperature)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
