#include <benchmark/benchmark.h>

#include "hankelcos/specfun.hpp"

using hankelcos::Complex;

static void BM_hankel2_series_region(benchmark::State& state) {
    const Complex z(4.0, -0.8);
    for (auto _ : state)
        benchmark::DoNotOptimize(hankelcos::specfun::hankel2_0(z));
}
BENCHMARK(BM_hankel2_series_region);

static void BM_hankel2_asymptotic_region(benchmark::State& state) {
    const Complex z(40.0, -2.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(hankelcos::specfun::hankel2_0(z));
}
BENCHMARK(BM_hankel2_asymptotic_region);

static void BM_bessel_j0_sweep(benchmark::State& state) {
    const double r = static_cast<double>(state.range(0));
    const Complex z(r, -0.1 * r);
    for (auto _ : state)
        benchmark::DoNotOptimize(hankelcos::specfun::bessel_j0(z));
}
BENCHMARK(BM_bessel_j0_sweep)->Arg(1)->Arg(8)->Arg(24);

BENCHMARK_MAIN();
