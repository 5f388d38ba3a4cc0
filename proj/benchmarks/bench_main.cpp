#include <benchmark/benchmark.h>

#include <cmath>

#include "skewlab/captivity.hpp"
#include "skewlab/cohomology.hpp"
#include "skewlab/transfer.hpp"
#include "skewlab/verify/oracles.hpp"

using namespace skewlab;

namespace {

void bm_assemble(benchmark::State& state) {
  const auto sys = verify::bump_system();
  const int cutoff = static_cast<int>(state.range(0));
  const auto grid = FrequencyGrid::guarded(sys, 4, cutoff);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(sys, 4, grid, Direction::Adjoint).entries.data());
  state.SetComplexityN(cutoff);
}

void bm_branch_tree(benchmark::State& state) {
  const CocycleContext ctx(doubling_cosine());
  const auto zone = TrapZone::from_context(ctx);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_trapped_at(ctx, 0, n, zone, TrapGrid{1, 65, false}, 0.3));
  state.SetItemsProcessed(state.iterations() * (1L << n));
}

void bm_count_exact(benchmark::State& state) {
  const CocycleContext ctx(doubling_cosine());
  const auto zone = TrapZone::from_context(ctx);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_trapped_at(ctx, 0, n, zone, TrapGrid{1, 0, true}, 0.3));
  state.SetItemsProcessed(state.iterations() * (1L << n));
}

void bm_egorov_lanczos(benchmark::State& state) {
  const CocycleContext ctx(doubling_cosine());
  const auto zone = TrapZone::from_context(ctx);
  const auto spec = EscapeSpec::for_zone(zone, 6.0);
  const int nu = static_cast<int>(state.range(0));
  const int cutoff = static_cast<int>(std::ceil((spec.R + spec.delta0 + 2.0) * nu / kTwoPi));
  const auto grid = FrequencyGrid::guarded(ctx, nu, cutoff);
  for (auto _ : state) benchmark::DoNotOptimize(pq_norm_sparse(ctx, nu, grid, 0, 4, spec).norm_P);
}

void bm_stable_graph(benchmark::State& state) {
  const NoiseModel model = verify::standard_model(doubling_cosine());
  const CocycleContext ctx(model, 0.01);
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_S(ctx, 0, x, 1e-10));
    x = std::fmod(x + 0.618, 1.0);
  }
}

}  // namespace

BENCHMARK(bm_assemble)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(bm_branch_tree)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_count_exact)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_egorov_lanczos)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_stable_graph)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
