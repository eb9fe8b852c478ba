#include <benchmark/benchmark.h>

#include "radial/distribution.hpp"

using namespace radial;

namespace {

void BM_TableBuild(benchmark::State& state) {
  const Manifold h2 = Manifold::hyperbolic(2);
  const auto p = RadialProfile::make(ProfileKind::kGaussian, 1.0);
  for (auto _ : state) {
    RadialDistribution d(h2, h2.origin(), p);
    benchmark::DoNotOptimize(d.log_z());
  }
}
BENCHMARK(BM_TableBuild)->Unit(benchmark::kMillisecond);

void BM_SampleSphere(benchmark::State& state) {
  const Manifold s2 = Manifold::sphere(2);
  const RadialDistribution d(s2, s2.origin(), RadialProfile::make(ProfileKind::kVonMisesFisher, 2.0));
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(d.sample(n, 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleSphere)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_SampleSpdMcmc(benchmark::State& state) {
  const Manifold spd = Manifold::spd(3);
  const RadialDistribution d(spd, spd.origin(), RadialProfile::make(ProfileKind::kGaussian, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(d.sample(1000, 7));
}
BENCHMARK(BM_SampleSpdMcmc)->Unit(benchmark::kMillisecond);

void BM_KlQuadrature(benchmark::State& state) {
  const Manifold s2 = Manifold::sphere(2);
  const auto p = RadialProfile::make(ProfileKind::kVonMisesFisher, 1.0);
  Rng rng(3);
  const RadialDistribution a(s2, s2.random_point(rng), p);
  const RadialDistribution b(s2, s2.random_point(rng), p);
  for (auto _ : state) benchmark::DoNotOptimize(kl_divergence(a, b));
}
BENCHMARK(BM_KlQuadrature)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
