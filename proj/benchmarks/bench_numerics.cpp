#include "radialspec/numerics/continuation.hpp"
#include "radialspec/numerics/kron_resolvent.hpp"
#include "radialspec/numerics/rank1_operator.hpp"
#include "radialspec/numerics/resolvent_decay.hpp"

#include <benchmark/benchmark.h>

using namespace radialspec;

// grid sizes: R = 30 with h = 30 / N
static void BM_RealTridiagonalEigenvalues(benchmark::State& state)
{
    const auto n = static_cast<double>(state.range(0));
    const auto op = discretize_rank1(1, RadialGrid(30.0, 30.0 / n), 0.0, true);
    for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(op)(0));
}
BENCHMARK(BM_RealTridiagonalEigenvalues)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);

static void BM_ComplexTridiagonalEigenvalues(benchmark::State& state)
{
    const auto n = static_cast<double>(state.range(0));
    const auto op = discretize_rank1(1, RadialGrid(30.0, 30.0 / n), Complex(0.0, -0.4), true);
    for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(op)(0));
}
BENCHMARK(BM_ComplexTridiagonalEigenvalues)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);

static void BM_ResolventNorm(benchmark::State& state)
{
    const auto op = discretize_rank1(1, RadialGrid(30.0, 0.01), Complex(0.0, -0.4), true);
    for (auto _ : state) benchmark::DoNotOptimize(resolvent_norm(op, Complex(-100.0, 0.0)));
}
BENCHMARK(BM_ResolventNorm)->Unit(benchmark::kMillisecond);

static void BM_KronContour(benchmark::State& state)
{
    const auto p = random_pair(static_cast<std::size_t>(state.range(0)), 1);
    const MatrixModel m{p.A, p.B, separating_rectangle(p.A, p.B, p.lambda, 256)};
    for (auto _ : state) benchmark::DoNotOptimize(contour_kron_resolvent(m, p.lambda).relative_error);
}
BENCHMARK(BM_KronContour)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_MatrixElement(benchmark::State& state)
{
    const auto f = [](Complex z) { return std::exp(-z * z); };
    const auto path = ScalingPath::global(Complex(0.0, -0.3));
    for (auto _ : state) benchmark::DoNotOptimize(matrix_element(2, path, Complex(2.0, -0.5), f, f).value);
}
BENCHMARK(BM_MatrixElement)->Unit(benchmark::kMillisecond);
