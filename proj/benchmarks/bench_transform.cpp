#include <benchmark/benchmark.h>

#include "hankelcos/branch.hpp"
#include "hankelcos/quad.hpp"

using namespace hankelcos;

static void BM_branched_sqrt(benchmark::State& state) {
    const Complex k(1.0, -0.3), w(2.1, 0.4);
    for (auto _ : state)
        benchmark::DoNotOptimize(branch::branched_sqrt(k, w));
}
BENCHMARK(BM_branched_sqrt);

static void BM_transform_strip(benchmark::State& state) {
    const TransformPoint pt(Wavenumber(Complex(1.0, -0.1)), Complex(0.5, 0.0));
    for (auto _ : state)
        benchmark::DoNotOptimize(quad::transform_L(pt));
}
BENCHMARK(BM_transform_strip);

static void BM_transform_schedule(benchmark::State& state) {
    // real k: forces the full Abel schedule + extrapolation
    const TransformPoint pt(Wavenumber(Complex(1.0, 0.0)), Complex(0.5, 0.0));
    for (auto _ : state)
        benchmark::DoNotOptimize(quad::transform_L(pt));
}
BENCHMARK(BM_transform_schedule);

static void BM_log_sin_M(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(quad::log_sin_M(1.0, 1.0));
}
BENCHMARK(BM_log_sin_M);
