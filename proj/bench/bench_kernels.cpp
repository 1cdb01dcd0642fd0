// Serial reference kernels against their OpenMP versions, on signal sizes of a
// default IF-mode run (21010 symbols at 32 samples per symbol).

#include <benchmark/benchmark.h>

#include <omp.h>

#include <random>
#include <vector>

#include "baudsync/dsp.hpp"
#include "baudsync/kernels.hpp"
#include "baudsync/simulation.hpp"

using namespace baudsync;

namespace {

std::vector<Complex> noise(std::size_t n) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    std::vector<Complex> v(n);
    for (auto& x : v)
        x = {g(rng), g(rng)};
    return v;
}

std::vector<double> noise_real(std::size_t n) {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    std::vector<double> v(n);
    for (auto& x : v)
        x = g(rng);
    return v;
}

constexpr std::size_t kSamples = 21010 * 32;

const std::vector<Complex>& signal() {
    static const auto s = noise(kSamples);
    return s;
}

const std::vector<double>& rrc() {
    static const auto g = design_rrc(0.25, 16, 32).taps;
    return g;
}

template <auto Fn>
void BM_convolve(benchmark::State& st) {
    omp_set_num_threads(static_cast<int>(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(Fn(signal(), rrc()));
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(kSamples));
}

template <auto Fn>
void BM_resample(benchmark::State& st) {
    omp_set_num_threads(static_cast<int>(st.range(0)));
    const kernels::SincKernel k;
    const kernels::ResampleGrid grid{0.37, 1.0 + 50e-6, kSamples - 64};
    for (auto _ : st)
        benchmark::DoNotOptimize(Fn(signal(), grid, k));
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(grid.count));
}

template <auto Fn>
void BM_mix_down(benchmark::State& st) {
    omp_set_num_threads(static_cast<int>(st.range(0)));
    static const auto pb = noise_real(kSamples);
    for (auto _ : st)
        benchmark::DoNotOptimize(Fn(pb, 1.0 / 32.0, 0.3, 2.0));
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(kSamples));
}

// sweep points run in parallel; each run is a serial receiver chain
void BM_sweep(benchmark::State& st) {
    RunConfig c;
    c.symbols = 4000;
    c.skip = 1000;
    c.impairments.snr_db = 20.0;
    const std::vector<std::string> seeds{"1", "2", "3", "4", "5", "6", "7", "8"};
    const int threads = static_cast<int>(st.range(0));
    for (auto _ : st)
        benchmark::DoNotOptimize(sweep(c, SweepAxis::Seed, seeds, threads));
}

std::vector<std::int64_t> thread_counts() {
    std::vector<std::int64_t> v{1};
    for (int t = 2; t <= omp_get_num_procs(); t *= 2)
        v.push_back(t);
    return v;
}

using ConvFn = std::vector<Complex> (*)(std::span<const Complex>, std::span<const double>);
constexpr ConvFn kConvSerial = kernels::serial::convolve;
constexpr ConvFn kConvParallel = kernels::parallel::convolve;

}  // namespace

BENCHMARK(BM_convolve<kConvSerial>)->Name("convolve/serial")->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_convolve<kConvParallel>)->Name("convolve/omp")->ArgsProduct({thread_counts()})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_resample<kernels::serial::resample>)->Name("resample/serial")->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_resample<kernels::parallel::resample>)->Name("resample/omp")->ArgsProduct({thread_counts()})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mix_down<kernels::serial::mix_to_complex>)->Name("mix_to_complex/serial")->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mix_down<kernels::parallel::mix_to_complex>)->Name("mix_to_complex/omp")->ArgsProduct({thread_counts()})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep)->Name("sweep/8-seeds")->ArgsProduct({thread_counts()})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
