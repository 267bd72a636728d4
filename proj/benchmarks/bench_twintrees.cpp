#include <benchmark/benchmark.h>

#include <cstdint>

#include "twintrees/bessel.hpp"
#include "twintrees/bigint.hpp"
#include "twintrees/hp.hpp"
#include "twintrees/profile_enum.hpp"
#include "twintrees/random_source.hpp"
#include "twintrees/rooted_tree.hpp"
#include "twintrees/saddle.hpp"
#include "twintrees/sampling.hpp"

using namespace twintrees;

namespace {

void bm_profile_stream(benchmark::State& state) {
    const auto k = static_cast<uint32_t>(state.range(0));
    uint64_t emitted = 0;
    for (auto _ : state) {
        ProfileStream s(k, DegreeCap::unbounded());
        DegreeProfile p = DegreeProfile::from_counts({1});
        while (s.next(p)) benchmark::DoNotOptimize(p.counts().data());
        emitted += s.emitted();
    }
    state.SetItemsProcessed(static_cast<int64_t>(emitted));
}
BENCHMARK(bm_profile_stream)->Arg(20)->Arg(40)->Arg(60);

void bm_twin_count_direct(benchmark::State& state) {
    const auto k = static_cast<uint32_t>(state.range(0));
    for (auto _ : state) {
        BigInt n = twin_profile_count_direct(k, DegreeCap::unbounded());
        benchmark::DoNotOptimize(n.get_mpz_t());
    }
}
BENCHMARK(bm_twin_count_direct)->Arg(20)->Arg(40)->Arg(60)->Unit(benchmark::kMillisecond);

void bm_twin_count_series(benchmark::State& state) {
    const auto k = static_cast<uint32_t>(state.range(0));
    for (auto _ : state) {
        BigInt n = twin_profile_count_series(k, DegreeCap::unbounded());
        benchmark::DoNotOptimize(n.get_mpz_t());
    }
}
BENCHMARK(bm_twin_count_series)->Arg(20)->Arg(40)->Arg(60)->Unit(benchmark::kMillisecond);

void bm_sample_census(benchmark::State& state) {
    const auto n = static_cast<uint32_t>(state.range(0));
    uint64_t trial = 0;
    for (auto _ : state) {
        RandomSource rng(7, trial++);
        const RootedTree t = sample_rooted_cayley(n, rng);
        const auto census = twin_pair_census(fringe_profiles(t));
        benchmark::DoNotOptimize(census.size());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * n);
}
BENCHMARK(bm_sample_census)->Arg(100)->Arg(1000)->Arg(10000);

void bm_gf_series(benchmark::State& state) {
    set_precision_bits(128);
    const HPComplex z = polar(HPReal(static_cast<double>(state.range(0))), HPReal(1) / 3);
    for (auto _ : state) {
        LogComplex v = gf_series_log(z);
        benchmark::DoNotOptimize(v.log_abs.backend().data());
    }
}
BENCHMARK(bm_gf_series)->Arg(10)->Arg(1000)->Arg(100000)->Unit(benchmark::kMicrosecond);

void bm_gf_integral(benchmark::State& state) {
    set_precision_bits(128);
    const HPComplex z = polar(HPReal(static_cast<double>(state.range(0))), HPReal(1) / 3);
    for (auto _ : state) {
        LogComplex v = gf_integral_log(z);
        benchmark::DoNotOptimize(v.log_abs.backend().data());
    }
}
BENCHMARK(bm_gf_integral)->Arg(10)->Arg(1000)->Arg(100000)->Unit(benchmark::kMicrosecond);

void bm_saddle_integral(benchmark::State& state) {
    set_precision_bits(static_cast<unsigned>(state.range(1)));
    const auto k = static_cast<uint32_t>(state.range(0));
    for (auto _ : state) {
        HPReal v = saddle_integral_log_count(k, DegreeCap::unbounded());
        benchmark::DoNotOptimize(v.backend().data());
    }
}
BENCHMARK(bm_saddle_integral)
    ->Args({5, 128})
    ->Args({10, 128})
    ->Args({10, 256})
    ->Args({20, 256})
    ->Unit(benchmark::kMillisecond);

void bm_chernoff_refined(benchmark::State& state) {
    set_precision_bits(128);
    const auto k = static_cast<uint32_t>(state.range(0));
    for (auto _ : state) {
        HPReal v = chernoff_log_bound(k, DegreeCap::unbounded(), true);
        benchmark::DoNotOptimize(v.backend().data());
    }
}
BENCHMARK(bm_chernoff_refined)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
