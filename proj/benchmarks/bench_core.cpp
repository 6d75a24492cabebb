#include <benchmark/benchmark.h>

#include "polya/ensembles.hpp"
#include "polya/montecarlo.hpp"
#include "polya/specfun.hpp"
#include "polya/toeplitz.hpp"

using namespace polya;

static void BM_BesselK(benchmark::State& st) {
    double x = 0.1;
    for (auto _ : st) {
        benchmark::DoNotOptimize(bessel_k(1.0, x));
        x = x > 40.0 ? 0.1 : x * 1.1;
    }
}
BENCHMARK(BM_BesselK);

static void BM_BesselPhiComplex(benchmark::State& st) {
    const cplx w(-3.0, 1.5);
    for (auto _ : st) benchmark::DoNotOptimize(bessel_phi(0.5, w));
}
BENCHMARK(BM_BesselPhiComplex);

static void BM_GegenbauerRule(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    gegenbauer_rule(n, 1.0);  // nodes are cached after the first call
    for (auto _ : st) benchmark::DoNotOptimize(gauss_gegenbauer(n, 1.0, [](double t) { return std::exp(t); }));
}
BENCHMARK(BM_GegenbauerRule)->Arg(16)->Arg(64)->Arg(256);

static EnsembleConfig bench_config(int family, int n) {
    switch (family) {
        case 0: return {WeightSpec::gaussian(n, 1.0), {}};
        case 1: return {WeightSpec::laguerre_m(n, 1.0), {}};
        default: return {WeightSpec::polya_product(n, 0.3, {0.2, -0.1, 0.15, 0.25, -0.05, 0.1, 0.3, 0.2}), {}};
    }
}

static void BM_BiorthUnshifted(benchmark::State& st) {
    const EnsembleConfig cfg = bench_config(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
    BiorthOptions o;
    o.verify = false;
    for (auto _ : st) benchmark::DoNotOptimize(biorth(cfg, o));
}
BENCHMARK(BM_BiorthUnshifted)->Args({0, 8})->Args({1, 8})->Args({2, 8})->Unit(benchmark::kMicrosecond);

static void BM_KernelSeries(benchmark::State& st) {
    const KernelEvaluator k(bench_config(static_cast<int>(st.range(0)), 6));
    double y = 0.5;
    for (auto _ : st) {
        benchmark::DoNotOptimize(kernel_eval(k, 0.7, y));
        y = y > 5.0 ? 0.5 : y + 0.01;
    }
}
BENCHMARK(BM_KernelSeries)->Arg(0)->Arg(1)->Arg(2);

static void BM_KernelContourRow(benchmark::State& st) {
    const KernelEvaluator k(bench_config(static_cast<int>(st.range(0)), 6));
    const std::vector<double> ys{0.5, 1.0, 1.5, 2.0, 2.5};
    kernel_contour_eval(k, 0.7, ys);  // builds the cached contour state
    for (auto _ : st) benchmark::DoNotOptimize(kernel_contour_eval(k, 0.7, ys));
}
BENCHMARK(BM_KernelContourRow)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

static void BM_FixedShiftGram(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    std::vector<double> x;
    for (int k = 0; k < n; ++k) x.push_back(k - 0.5 * (n - 1));
    const EnsembleConfig cfg{WeightSpec::gaussian(n, 1.0), ShiftConfig::fixed(x)};
    for (auto _ : st) benchmark::DoNotOptimize(gram_deviation(gram_matrix(biorth(cfg, {false}))));
}
BENCHMARK(BM_FixedShiftGram)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_ToeplitzIdentity(benchmark::State& st) {
    std::uint64_t seed = 1;
    for (auto _ : st) benchmark::DoNotOptimize(check_identity(random_toeplitz(8, 5, seed++)));
}
BENCHMARK(BM_ToeplitzIdentity);

static void BM_SampleGue(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(sample_h2_gaussian(n, 1.0, ShiftConfig::none(), 4096, 7));
    st.SetItemsProcessed(st.iterations() * 4096);
}
BENCHMARK(BM_SampleGue)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_JpdfEval(benchmark::State& st) {
    const JointDensity p({WeightSpec::laguerre_m(4, 1.0), {}});
    const double x[4] = {0.3, 1.1, 2.6, 4.0};
    for (auto _ : st) benchmark::DoNotOptimize(p(x));
}
BENCHMARK(BM_JpdfEval);
BENCHMARK_MAIN();
