#include <benchmark/benchmark.h>

#include "radial/geometry.hpp"

using namespace radial;

namespace {

Manifold space(int which) {
  switch (which) {
    case 0: return Manifold::sphere(2);
    case 1: return Manifold::hyperbolic(2);
    case 2: return Manifold::spd(3);
    default: return Manifold::product({Manifold::sphere(2), Manifold::hyperbolic(2)});
  }
}

void BM_ExpLog(benchmark::State& state) {
  const Manifold m = space(static_cast<int>(state.range(0)));
  Rng rng(1);
  const Point x = m.random_point(rng);
  const Tangent v = m.random_unit_tangent(x, rng).scaled(0.7);
  for (auto _ : state) {
    const Point y = m.exp_map(x, v);
    benchmark::DoNotOptimize(m.log_map(x, y));
  }
  state.SetLabel(m.name());
}
BENCHMARK(BM_ExpLog)->DenseRange(0, 3);

void BM_Distance(benchmark::State& state) {
  const Manifold m = space(static_cast<int>(state.range(0)));
  Rng rng(2);
  const Point x = m.random_point(rng);
  const Point y = m.random_point(rng);
  for (auto _ : state) benchmark::DoNotOptimize(m.distance(x, y));
  state.SetLabel(m.name());
}
BENCHMARK(BM_Distance)->DenseRange(0, 3);

}  // namespace

BENCHMARK_MAIN();
