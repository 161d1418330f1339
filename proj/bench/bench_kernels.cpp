#include <benchmark/benchmark.h>

#include "standby/config.hpp"
#include "standby/kernels.hpp"
#include "standby/optimizer.hpp"

using namespace standby;

namespace {

const ModelConfig& example() {
    static const ModelConfig cfg = load_config(std::string(STANDBY_CONFIG_DIR) + "/paper-example.json");
    return cfg;
}

const MarkedKernel& example_kernel() {
    static const MarkedKernel k = build(example().model);
    return k;
}

RowVector start() { return initial_distribution(example().model, example_kernel().layout); }

void BM_VecmatSerial(benchmark::State& state) {
    const MarkedKernel& k = example_kernel();
    RowVector x = start(), y;
    for (auto _ : state) {
        kernels::vecmat_serial(x, k.D, y);
        x.swap(y);
        benchmark::DoNotOptimize(x.data());
    }
}
BENCHMARK(BM_VecmatSerial);

void BM_VecmatParallel(benchmark::State& state) {
    const MarkedKernel& k = example_kernel();
    SparseColMatrix Dcol = k.D;
    RowVector x = start(), y;
    for (auto _ : state) {
        kernels::vecmat_parallel(x, Dcol, y);
        x.swap(y);
        benchmark::DoNotOptimize(x.data());
    }
}
BENCHMARK(BM_VecmatParallel);

void BM_RowSumsSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(kernels::row_sums_serial(example_kernel().D));
}
BENCHMARK(BM_RowSumsSerial);

void BM_RowSumsParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(kernels::row_sums_parallel(example_kernel().D));
}
BENCHMARK(BM_RowSumsParallel);

void BM_Build(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build(example().model));
}
BENCHMARK(BM_Build)->Unit(benchmark::kMillisecond);

void BM_StationaryRecursion(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(stationary_recursion(example_kernel()));
}
BENCHMARK(BM_StationaryRecursion)->Unit(benchmark::kMillisecond);

void BM_StationaryDirect(benchmark::State& state) {
    RowVector phi = start();
    for (auto _ : state) benchmark::DoNotOptimize(stationary_direct(example_kernel(), phi));
}
BENCHMARK(BM_StationaryDirect)->Unit(benchmark::kMillisecond);

// Geometric sweep over 9 x 4 points; arg 0 serial, 1 parallel.
void BM_Sweep(benchmark::State& state) {
    SweepSpec spec;
    spec.grid = {0.1, 0.9, 0.1};
    spec.R_lo = 1;
    spec.R_hi = example().model.n;
    spec.parallel = state.range(0) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(sweep(example().model, example().economics, spec));
}
BENCHMARK(BM_Sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
