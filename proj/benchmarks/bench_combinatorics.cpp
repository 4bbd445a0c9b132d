#include "radialspec/root_system.hpp"
#include "radialspec/spectral_geometry.hpp"
#include "radialspec/wall_lattice.hpp"

#include <benchmark/benchmark.h>

using namespace radialspec;

static void BM_WeylGroup(benchmark::State& state)
{
    const auto rs = a_series(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(weyl_group(rs).size());
}
BENCHMARK(BM_WeylGroup)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_WallLattice(benchmark::State& state)
{
    const auto rs = a_series(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(compute_lattice(rs).size());
}
BENCHMARK(BM_WallLattice)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_Thresholds(benchmark::State& state)
{
    const auto rs = a_series(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(thresholds(rs).values.size());
}
BENCHMARK(BM_Thresholds)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
