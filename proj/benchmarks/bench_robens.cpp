#include <benchmark/benchmark.h>

#include "robens/analysis.hpp"
#include "robens/optimize.hpp"
#include "robens/robustness.hpp"

namespace {

using namespace robens;

void SurvivalEval(benchmark::State& state) {
    const EnsembleParams e{0.225, 0.100};
    const ModelParams p{50.0, 0.0};
    double t = 0.0;
    for (auto _ : state) {
        t += 1e-6;
        benchmark::DoNotOptimize(ensemble_survival(e, p, 0.05 + t));
    }
}
BENCHMARK(SurvivalEval);

void SurvivalTime(benchmark::State& state) {
    const EnsembleParams e{0.225, 0.100};
    const ModelParams p{static_cast<double>(state.range(0)), 0.0};
    for (auto _ : state) benchmark::DoNotOptimize(survival_time(e, p));
}
BENCHMARK(SurvivalTime)->Arg(1)->Arg(50)->Arg(1000);

void Maximize(benchmark::State& state) {
    const ModelParams p{50.0, 0.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(maximize_robustness(p, state.range(0) != 0,
                                                     Measure::survival));
}
BENCHMARK(Maximize)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void GridRow(benchmark::State& state) {
    const ModelParams p{50.0, 0.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(contour_grid(p, 0.05, 0.95, -1.0, 1.0, 4,
                                              static_cast<int>(state.range(0))));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(GridRow)->RangeMultiplier(2)->Range(8, 64)->Complexity()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
