#include "constforge/congruence.hpp"
#include "constforge/elementary.hpp"
#include "constforge/power_series.hpp"
#include "constforge/series.hpp"

#include <benchmark/benchmark.h>

using namespace constforge;

namespace {

void BM_EvalSeries(benchmark::State& state, const char* id) {
    const series::SeriesSpec* spec = series::find(id);
    long digits = state.range(0);
    long terms = 0;
    for (auto _ : state) {
        auto r = series::eval_series_full(*spec, digits);
        terms = r.terms;
        benchmark::DoNotOptimize(r.value);
    }
    state.counters["terms"] = static_cast<double>(terms);
    state.counters["digits_per_term"] =
        static_cast<double>(digits) / static_cast<double>(terms);
}

void BM_ConstPi(benchmark::State& state) {
    // a fresh precision every iteration defeats the constant cache
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(state.range(0));
    mpfr_prec_t bump = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(real::const_pi(prec + bump++));
    }
}

void BM_VerifyAll(benchmark::State& state) {
    long digits = state.range(0);
    for (auto _ : state) {
        auto reports = series::verify_all(digits, 2);
        benchmark::DoNotOptimize(reports);
    }
}

void BM_CongruenceSweep(benchmark::State& state, cong::CongruenceId id) {
    std::uint64_t pmax = static_cast<std::uint64_t>(state.range(0));
    std::size_t checks = 0;
    for (auto _ : state) {
        auto reports = cong::sweep(id, 5, pmax, 1);
        checks = reports.size();
        benchmark::DoNotOptimize(reports);
    }
    state.counters["primes"] = static_cast<double>(checks);
}

void BM_PsVerify(benchmark::State& state) {
    long order = state.range(0);
    for (auto _ : state) {
        auto r = ps::verify_2_2(order);
        benchmark::DoNotOptimize(r);
    }
}

} // namespace

BENCHMARK_CAPTURE(BM_EvalSeries, s1_1, "S1.1")->Arg(100)->Arg(500)->Arg(1000);
BENCHMARK_CAPTURE(BM_EvalSeries, s1_2l, "S1.2L")->Arg(100)->Arg(500)->Arg(1000);
BENCHMARK_CAPTURE(BM_EvalSeries, s1_3u, "S1.3u")->Arg(100)->Arg(500)->Arg(1000);
BENCHMARK_CAPTURE(BM_EvalSeries, s1_16, "S1.16")->Arg(100)->Arg(500)->Arg(1000);
BENCHMARK_CAPTURE(BM_EvalSeries, gosper, "B-GOSPER")->Arg(100)->Arg(1000);

BENCHMARK(BM_ConstPi)->Arg(1000)->Arg(10000)->Arg(100000)->Iterations(20);
BENCHMARK(BM_VerifyAll)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_CAPTURE(BM_CongruenceSweep, c2a, cong::CongruenceId::C2a)
    ->Arg(1000)
    ->Arg(5000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CongruenceSweep, cs6, cong::CongruenceId::CS6)
    ->Arg(500)
    ->Arg(1000)
    ->Unit(benchmark::kMillisecond);

BENCHMARK(BM_PsVerify)->Arg(21)->Arg(41)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
