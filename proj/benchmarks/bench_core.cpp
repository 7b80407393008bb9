#include <qlevy/fock.hpp>
#include <qlevy/kernels.hpp>
#include <qlevy/levy.hpp>
#include <qlevy/partitions.hpp>
#include <qlevy/wick.hpp>

#include <benchmark/benchmark.h>

#include <vector>

using namespace qlevy;

static void BM_EnumeratePairings(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_pair_partitions(n).size());
}
BENCHMARK(BM_EnumeratePairings)->DenseRange(6, 14, 4);

static void BM_EnumerateOrderClasses(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_order_classes(n).size());
}
BENCHMARK(BM_EnumerateOrderClasses)->DenseRange(4, 7);

static void BM_ConstantMoment(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(constant_q_moment(0.5, n, 1.0));
}
BENCHMARK(BM_ConstantMoment)->Arg(8)->Arg(12);

static void BM_KernelMomentGauss(benchmark::State& state) {
    const auto q = QKernel::exponential(0.5, 1.0);
    const std::vector<Interval> word(static_cast<std::size_t>(state.range(0)), Interval(0, 1));
    const Gauss quad{static_cast<int>(state.range(1))};
    for (auto _ : state) benchmark::DoNotOptimize(mixed_moment_kernel(q, word, quad));
}
BENCHMARK(BM_KernelMomentGauss)->Args({4, 24})->Args({6, 12})->Args({6, 24})->Unit(benchmark::kMicrosecond);

static void BM_FockVacuumMoment(benchmark::State& state) {
    const ProcessSpec spec(QKernel::exponential(0.5, 1.0), Grid{static_cast<int>(state.range(1)), 1.0});
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(vacuum_moment(spec, Interval(0, 1), n));
}
BENCHMARK(BM_FockVacuumMoment)->Args({4, 16})->Args({4, 64})->Args({6, 16})->Args({6, 32})->Unit(benchmark::kMillisecond);

static void BM_EstimateCAllClasses(benchmark::State& state) {
    const WickConstantOracle o(0.5);
    const std::vector<long> Ns{4096, 8192, 16384};
    const auto classes = enumerate_order_classes(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        double acc = 0.0;
        for (const auto& s : classes) acc += estimate_c(o, s, 1.0, Ns).value;
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_EstimateCAllClasses)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
