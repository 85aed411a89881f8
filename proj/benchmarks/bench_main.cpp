#include <benchmark/benchmark.h>

#include <memory>

#include "lpt/last_passage.hpp"
#include "lpt/monte_carlo.hpp"
#include "lpt/special_functions.hpp"

namespace {

void BM_GreenBrownian(benchmark::State& state) {
    lpt::GreenKit kit(lpt::make_brownian_drift(1.0));
    double x = -1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kit.green(1.5, x, 0.3));
        x = x < 1.0 ? x + 1e-3 : -1.0;
    }
}
BENCHMARK(BM_GreenBrownian);

void BM_ParabolicCylinder(benchmark::State& state) {
    const double order = -static_cast<double>(state.range(0));
    double x = -3.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lpt::parabolic_cylinder_D(order, x));
        x = x < 3.0 ? x + 1e-2 : -3.0;
    }
}
BENCHMARK(BM_ParabolicCylinder)->Arg(2)->Arg(40);

void BM_LaplaceOU(benchmark::State& state) {
    auto kit = std::make_shared<lpt::GreenKit>(lpt::make_ornstein_uhlenbeck(-1.0));
    lpt::LastPassageAnalyzer an(kit);
    double q = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(an.laplace_at_alpha(q));
        q = q < 5.0 ? q + 0.01 : 0.1;
    }
}
BENCHMARK(BM_LaplaceOU);

void BM_Inversion(benchmark::State& state) {
    auto kit = std::make_shared<lpt::GreenKit>(lpt::make_brownian_drift(1.0));
    lpt::LastPassageAnalyzer an(kit);
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(an.density(t, 0.0));
        t = t < 5.0 ? t + 0.05 : 0.1;
    }
}
BENCHMARK(BM_Inversion);

void BM_McPaths(benchmark::State& state) {
    const lpt::DiffusionSpec spec = lpt::make_switching_brownian(-1.0, -2.0);
    lpt::McConfig cfg;
    cfg.paths = state.range(0);
    cfg.dt = 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lpt::simulate(spec, 0.0, cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_McPaths)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
