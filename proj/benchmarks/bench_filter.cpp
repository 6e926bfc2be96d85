#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "savgol/coefficients.hpp"
#include "savgol/filter.hpp"
#include "savgol/noise.hpp"

namespace {

std::vector<double> synthetic_series(std::size_t q) {
    std::mt19937_64 engine(12345);
    std::normal_distribution<double> noise(0.0, 0.3);
    std::vector<double> y(q);
    for (std::size_t i = 0; i < q; ++i) {
        const double t = static_cast<double>(i);
        y[i] = 300.0 + 0.8 * t + 0.012 * t * t + 2.5 * std::sin(t / 6.0) + noise(engine);
    }
    return y;
}

void BM_BuildCoefficientBank(benchmark::State& state) {
    const savgol::FilterSpec spec(static_cast<int>(state.range(0)),
                                  static_cast<int>(state.range(1)));
    for (auto _ : state) {
        auto bank = savgol::build_coefficient_bank(spec);
        benchmark::DoNotOptimize(bank);
    }
}
BENCHMARK(BM_BuildCoefficientBank)->Args({5, 9})->Args({7, 13})->Args({9, 25});

void BM_ApplyFilter(benchmark::State& state) {
    const savgol::FilterSpec spec(5, 9);
    const auto bank = savgol::build_coefficient_bank(spec);
    const auto y = synthetic_series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto out = savgol::apply_filter(bank, y);
        benchmark::DoNotOptimize(out);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ApplyFilter)->Arg(67)->Arg(1000)->Arg(100000);

void BM_SweepResidualSd(benchmark::State& state) {
    const auto y = synthetic_series(67);
    for (auto _ : state) {
        auto table = savgol::sweep_residual_sd(5, 25, y);
        benchmark::DoNotOptimize(table);
    }
}
BENCHMARK(BM_SweepResidualSd);

} // namespace

BENCHMARK_MAIN();
