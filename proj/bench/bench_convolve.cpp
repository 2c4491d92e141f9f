#include "certify/exppoly.hpp"

#include <benchmark/benchmark.h>

using namespace certify;

namespace {

// sum_{n < terms} (n+1)/(n+2) t^{n mod 3} e^{-(n+1) t}
ExpPoly sample(long terms, long shift) {
    ExpPoly f;
    for (long n = 0; n < terms; ++n) f += ExpPoly::term(rat(n + 1 + shift, n + 2), n % 3, n + 1 + shift);
    return f;
}

void BM_convolve_parallel(benchmark::State& state) {
    const ExpPoly f = sample(state.range(0), 0), g = sample(state.range(0), 7);
    for (auto _ : state) benchmark::DoNotOptimize(convolve(f, g));
    state.SetComplexityN(state.range(0));
}

void BM_convolve_serial(benchmark::State& state) {
    const ExpPoly f = sample(state.range(0), 0), g = sample(state.range(0), 7);
    for (auto _ : state) benchmark::DoNotOptimize(convolve_serial(f, g));
    state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_convolve_parallel)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_convolve_serial)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
