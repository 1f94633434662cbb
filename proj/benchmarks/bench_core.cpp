#include <benchmark/benchmark.h>

#include "parastab/basin.hpp"
#include "parastab/floquet.hpp"
#include "parastab/hill.hpp"
#include "parastab/melnikov.hpp"

using namespace parastab;

namespace {

OscillatorParams params(double dh, double g, double beta, double wm, double f, double wf) {
    return OscillatorParams(ParamValues{dh, g, beta, wm, f, wf});
}

void BM_MelnikovClosed(benchmark::State& state) {
    const auto p = params(0.7, 0.2, 0.05, 1.3, 0.1, 0.9);
    double t0 = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(melnikov_closed(p, t0));
        t0 += 1e-3;
    }
}
BENCHMARK(BM_MelnikovClosed);

void BM_MelnikovQuadrature(benchmark::State& state) {
    const auto p = params(0.7, 0.2, 0.05, 1.3, 0.1, 0.9);
    for (auto _ : state) benchmark::DoNotOptimize(melnikov_quadrature(p, 0.4));
}
BENCHMARK(BM_MelnikovQuadrature);

void BM_HillDeterminant(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto m = build_hill_matrix(DeterminantFamily::OddCosine, 0.05, 0.25, 1.0, n);
    for (auto _ : state) benchmark::DoNotOptimize(scaled_det(m));
}
BENCHMARK(BM_HillDeterminant)->Arg(10)->Arg(25)->Arg(50);

void BM_TransitionCurve(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_transition_curve(DeterminantFamily::OddSine, k, 0.05, 1.0));
    }
}
BENCHMARK(BM_TransitionCurve)->DenseRange(1, 3);

void BM_Monodromy(benchmark::State& state) {
    const auto p = params(0.25, 0.06, 0.01, 1.0, 0, 1);
    for (auto _ : state) benchmark::DoNotOptimize(monodromy_origin(p));
}
BENCHMARK(BM_Monodromy)->Unit(benchmark::kMicrosecond);

void BM_ClassifyCell(benchmark::State& state) {
    const auto p = params(1.0, 0.05, 0.1, 1.0, 0.12, 1.0);
    BasinGridSpec spec;
    spec.horizon_periods = 16;
    const auto settings = default_basin_settings();
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify_initial_condition(p, 0.2, 0.1, spec, settings));
    }
}
BENCHMARK(BM_ClassifyCell)->Unit(benchmark::kMicrosecond);

void BM_BasinRaster(benchmark::State& state) {
    const auto p = params(1.0, 0.05, 0.1, 1.0, 0.12, 1.0);
    BasinGridSpec spec;
    spec.nx = spec.ny = static_cast<std::size_t>(state.range(0));
    spec.horizon_periods = 16;
    for (auto _ : state) benchmark::DoNotOptimize(safe_basin_area(p, spec, default_basin_settings()));
}
BENCHMARK(BM_BasinRaster)->Arg(31)->Arg(61)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
