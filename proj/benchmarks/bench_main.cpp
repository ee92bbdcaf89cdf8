#include <benchmark/benchmark.h>

#include <vector>

#include "noncollide/ensembles.hpp"
#include "noncollide/fredholm.hpp"
#include "noncollide/karlin_mcgregor.hpp"
#include "noncollide/kernels.hpp"
#include "noncollide/sde.hpp"

using namespace noncollide;

static void BM_KernelHermite(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kern::kernel_hermite(n, 0.5, x, 1.0, -x));
        x += 1e-9;
    }
}
BENCHMARK(BM_KernelHermite)->Arg(4)->Arg(32)->Arg(256);

static void BM_TracyWidomFredholm(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(fred::tracy_widom_fredholm(-2.0));
}
BENCHMARK(BM_TracyWidomFredholm)->Unit(benchmark::kMillisecond);

static void BM_TracyWidomPainleve(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(fred::tracy_widom_painleve(-2.0));
}
BENCHMARK(BM_TracyWidomPainleve)->Unit(benchmark::kMicrosecond);

static void BM_SampleGue(benchmark::State& state) {
    const auto kind = ens::EnsembleKind::make(ens::EnsembleTag::GUE, static_cast<int>(state.range(0)));
    RngStream rng(1, 0);
    for (auto _ : state) {
        auto m = ens::sample_matrix(kind, 1.0, rng);
        benchmark::DoNotOptimize(ens::eigenvalues(m));
    }
}
BENCHMARK(BM_SampleGue)->Arg(4)->Arg(16)->Arg(64);

static void BM_DysonPath(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<double> x0(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x0[static_cast<std::size_t>(i)] = i - 0.5 * (n - 1);
    const TimeGrid grid = TimeGrid::uniform(0.1, 1);
    RngStream rng(2, 0);
    for (auto _ : state) benchmark::DoNotOptimize(sde::simulate_dyson(2.0, x0, grid, rng, 1e-3));
}
BENCHMARK(BM_DysonPath)->Arg(3)->Arg(8)->Unit(benchmark::kMicrosecond);

static void BM_FNnu(benchmark::State& state) {
    const auto x = validate_chamber({0.3, 0.9, 1.6}, Chamber::C);
    const auto y = validate_chamber({0.5, 1.2, 2.1}, Chamber::C);
    for (auto _ : state) benchmark::DoNotOptimize(km::f_N_nu(0.5, 0.7, y, x));
}
BENCHMARK(BM_FNnu);
BENCHMARK_MAIN();
