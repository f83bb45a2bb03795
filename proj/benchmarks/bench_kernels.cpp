// Throughput of the inner kernels on the default N = 2 fixture.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <string>
#include <vector>

#include "boltzlab/collision.hpp"
#include "boltzlab/transport.hpp"

using namespace boltzlab;

namespace {

DistributionFunction fixture(const PhaseGrid& g) {
  const std::vector<double> x0(g.dim(), 0.5 * g.length());
  std::vector<double> va(g.dim(), 0.0), vb(g.dim(), 0.0);
  va[0] = 1.5;
  vb[0] = -1.5;
  const double sx = std::max(1.0, 2.0 * g.dx()), sv = std::max(1.0, 2.0 * g.dv());
  return make_gaussian(g, x0, va, sx, sv, 1e-2) + make_gaussian(g, x0, vb, sx, sv, 1e-2);
}

// Args: n_x, n_v (N = 2).
void BM_Gain(benchmark::State& state) {
  const PhaseGrid g(2, 8.0, static_cast<int>(state.range(0)), 4.0, static_cast<int>(state.range(1)));
  const auto f = fixture(g);
  const auto kernel = make_kernel(g, -0.5);
  for (auto _ : state) benchmark::DoNotOptimize(gain_term(f, f, kernel));
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(g.size()));
}
BENCHMARK(BM_Gain)->Args({4, 8})->Args({4, 16})->Args({16, 16})->Unit(benchmark::kMillisecond);

void BM_Loss(benchmark::State& state) {
  const PhaseGrid g(2, 8.0, static_cast<int>(state.range(0)), 4.0, static_cast<int>(state.range(1)));
  const auto f = fixture(g);
  const auto kernel = make_kernel(g, -0.5);
  for (auto _ : state) benchmark::DoNotOptimize(loss_term(f, f, kernel));
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(g.size()));
}
BENCHMARK(BM_Loss)->Args({4, 16})->Args({16, 16})->Unit(benchmark::kMillisecond);

// Args: interpolation index (cubic, linear, clamped, spectral).
void BM_FreeStream(benchmark::State& state) {
  const PhaseGrid g(2, 8.0, 16, 4.0, 16);
  const auto f = fixture(g);
  const auto m = static_cast<Interpolation>(state.range(0));
  state.SetLabel(std::string(to_string(m)));
  for (auto _ : state) benchmark::DoNotOptimize(free_stream(f, 0.37, m));
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(g.size()));
}
BENCHMARK(BM_FreeStream)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_MixedNorm(benchmark::State& state) {
  const PhaseGrid g(2, 8.0, 16, 4.0, 16);
  const auto f = fixture(g);
  for (auto _ : state) benchmark::DoNotOptimize(mixed_norm_xv(f, Rational(5, 16), Rational(11, 16)));
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(g.size()));
}
BENCHMARK(BM_MixedNorm)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
