#include <benchmark/benchmark.h>

#include "ebitsim/concentration.hpp"
#include "ebitsim/dilution.hpp"
#include "ebitsim/spectra.hpp"
#include "ebitsim/typicality.hpp"

using namespace ebitsim;

static void BM_PlanDilution(benchmark::State& state) {
    const auto base = BaseSpectrum::qubit(0.25);
    const auto N = state.range(0);
    for (auto _ : state) {
        auto plan = plan_dilution(base, N, 3.0);
        benchmark::DoNotOptimize(plan.delta_dim);
    }
    state.SetComplexityN(N);
}
BENCHMARK(BM_PlanDilution)->Arg(1000)->Arg(10000)->Arg(100000)->Complexity();

static void BM_PlanDilutionExact(benchmark::State& state) {
    const auto base = BaseSpectrum::qubit(0.25);
    const auto N = state.range(0);
    for (auto _ : state) {
        auto plan = plan_dilution(base, N, 3.0, PrecisionMode::Exact);
        benchmark::DoNotOptimize(plan.u2_norm_sq_exact);
    }
}
BENCHMARK(BM_PlanDilutionExact)->Arg(1000)->Arg(10000);

static void BM_TensorPowerClasses(benchmark::State& state) {
    const auto base = BaseSpectrum::qubit(0.25);
    const auto N = state.range(0);
    for (auto _ : state) {
        auto classes = tensor_power_classes(base, N);
        benchmark::DoNotOptimize(classes.size());
    }
    state.SetComplexityN(N);
}
BENCHMARK(BM_TensorPowerClasses)->Arg(1000)->Arg(10000)->Arg(100000)->Complexity();

static void BM_Classify(benchmark::State& state) {
    const auto base = BaseSpectrum::qubit(0.25);
    const auto N = state.range(0);
    auto classes = tensor_power_classes(base, N);
    const double S = entropy(base);
    for (auto _ : state) {
        auto part = classify(classes, S, 3.0);
        benchmark::DoNotOptimize(part.atypical_mass);
    }
}
BENCHMARK(BM_Classify)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_ExpectedYield(benchmark::State& state) {
    const auto base = BaseSpectrum::qubit(0.25);
    const auto N = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(expected_yield(base, N));
}
BENCHMARK(BM_ExpectedYield)->Arg(1000)->Arg(10000)->Arg(100000);

BENCHMARK_MAIN();
