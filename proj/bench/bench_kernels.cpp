// Serial reference kernels against their OpenMP versions on the same grids.
//   bench_kernels --benchmark_filter=BlockAverage

#include <benchmark/benchmark.h>
#include <omp.h>

#include <vector>

#include "haar_besov/approx.hpp"
#include "haar_besov/experiments.hpp"
#include "haar_besov/kernels.hpp"

using namespace haar_besov;
namespace ks = haar_besov::kernels::serial;
namespace ko = haar_besov::kernels::omp;

namespace {

std::vector<double> grid(int d, int m) {
    const auto f = random_step(1, d, m);
    return {f.values().begin(), f.values().end()};
}

template <bool Parallel>
void AbsPowSum(benchmark::State& st) {
    const auto v = grid(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
    for (auto _ : st) {
        const double r = Parallel ? ko::abs_pow_sum(v, 0.7) : ks::abs_pow_sum(v, 0.7);
        benchmark::DoNotOptimize(r);
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(v.size()));
}

template <bool Parallel>
void BlockAverage(benchmark::State& st) {
    const int d = static_cast<int>(st.range(0)), m = static_cast<int>(st.range(1));
    const auto v = grid(d, m);
    std::vector<double> out(v.size() >> d);
    for (auto _ : st) {
        if (Parallel) ko::block_average(v, d, m, m - 1, out);
        else ks::block_average(v, d, m, m - 1, out);
        benchmark::ClobberMemory();
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(v.size()));
}

template <bool Parallel>
void HaarAnalysisStep(benchmark::State& st) {
    const int d = static_cast<int>(st.range(0)), m = static_cast<int>(st.range(1));
    const auto v = grid(d, m);
    std::vector<double> coarse(v.size() >> d), details(coarse.size() * ((std::size_t{1} << d) - 1));
    for (auto _ : st) {
        if (Parallel) ko::haar_analysis_step(v, d, m, coarse, details);
        else ks::haar_analysis_step(v, d, m, coarse, details);
        benchmark::ClobberMemory();
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(v.size()));
}

template <bool Parallel>
void TensorAxis(benchmark::State& st) {
    const int d = static_cast<int>(st.range(0)), m = static_cast<int>(st.range(1));
    auto v = grid(d, m);
    for (auto _ : st) {
        if (Parallel) ko::tensor_axis_analysis(v, d, m, d - 1);
        else ks::tensor_axis_analysis(v, d, m, d - 1);
        benchmark::ClobberMemory();
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(v.size()));
}

template <bool Parallel>
void ShiftPowSums(benchmark::State& st) {
    const int d = static_cast<int>(st.range(0)), m = static_cast<int>(st.range(1));
    const auto v = grid(d, m);
    const int r = 2;
    std::size_t n = 1;
    for (int j = 0; j < d; ++j) n *= 2 * r + 1;
    std::vector<double> out(n);
    for (auto _ : st) {
        if (Parallel) ko::shift_pow_sums(v, d, m, r, 0.8, out);
        else ks::shift_pow_sums(v, d, m, r, 0.8, out);
        benchmark::ClobberMemory();
    }
}

template <bool Parallel>
void CubeBestErrors(benchmark::State& st) {
    const int d = static_cast<int>(st.range(0)), m = static_cast<int>(st.range(1));
    const auto v = grid(d, m);
    const int k = m / 2;
    std::vector<double> out(std::size_t{1} << (k * d));
    for (auto _ : st) {
        if (Parallel) ko::cube_best_errors(v, d, m, k, 0.7, out);
        else ks::cube_best_errors(v, d, m, k, 0.7, out);
        benchmark::ClobberMemory();
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(v.size()));
}

// Whole a-norm evaluation through the library (parallel kernels inside).
void ANormLibrary(benchmark::State& st) {
    const auto f = random_step(2, static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
    const auto prm = BesovParams::make(0.8, 1.0, 0.6, f.dim());
    for (auto _ : st) benchmark::DoNotOptimize(a_norm(f, prm));
    st.counters["threads"] = omp_get_max_threads();
}

void Sizes(benchmark::internal::Benchmark* b) { b->Args({1, 20})->Args({2, 10})->Args({3, 7}); }
void SmallSizes(benchmark::internal::Benchmark* b) { b->Args({1, 14})->Args({2, 7})->Args({3, 5}); }

}  // namespace

BENCHMARK(AbsPowSum<false>)->Apply(Sizes);
BENCHMARK(AbsPowSum<true>)->Apply(Sizes);
BENCHMARK(BlockAverage<false>)->Apply(Sizes);
BENCHMARK(BlockAverage<true>)->Apply(Sizes);
BENCHMARK(HaarAnalysisStep<false>)->Apply(Sizes);
BENCHMARK(HaarAnalysisStep<true>)->Apply(Sizes);
BENCHMARK(TensorAxis<false>)->Apply(Sizes);
BENCHMARK(TensorAxis<true>)->Apply(Sizes);
BENCHMARK(ShiftPowSums<false>)->Apply(SmallSizes);
BENCHMARK(ShiftPowSums<true>)->Apply(SmallSizes);
BENCHMARK(CubeBestErrors<false>)->Apply(Sizes);
BENCHMARK(CubeBestErrors<true>)->Apply(Sizes);
BENCHMARK(ANormLibrary)->Apply(SmallSizes)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
