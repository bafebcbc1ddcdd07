// Microbenchmarks for the hot paths: partition enumeration, subset-sum
// profiles, exact censuses, sieve construction, factorization throughput,
// the counter-based RNG, and the Monte Carlo sampler.
//
// Build and run:  ./build/benchmarks/multab_bench [--benchmark_filter=...]

#include "multab/census.hpp"
#include "multab/divstats.hpp"
#include "multab/gfpoly.hpp"
#include "multab/partitions.hpp"
#include "multab/primecount.hpp"
#include "multab/rng.hpp"
#include "multab/sampler.hpp"

#include <benchmark/benchmark.h>

using namespace multab;

namespace {

void BM_PartitionEnumeration(benchmark::State& state) {
    const uint32_t n = static_cast<uint32_t>(state.range(0));
    for (auto _ : state) {
        uint64_t seen = 0;
        partitions::for_each_partition(n, [&](const partitions::Partition&) { ++seen; });
        benchmark::DoNotOptimize(seen);
    }
    state.counters["partitions"] = partitions::count_partitions(n).get_d();
}
BENCHMARK(BM_PartitionEnumeration)->Arg(30)->Arg(40)->Arg(50);

void BM_SubsetSumProfile(benchmark::State& state) {
    const uint32_t n = static_cast<uint32_t>(state.range(0));
    // staircase type 1 + 2 + ... + k (+ remainder), many distinct parts
    std::vector<uint32_t> parts;
    uint32_t left = n;
    for (uint32_t part = 1; 2 * part <= left; ++part) {
        parts.push_back(part);
        left -= part;
    }
    if (left) parts.push_back(left);
    const partitions::Partition lambda(parts);
    for (auto _ : state) {
        auto prof = partitions::subset_sum_profile(lambda);
        benchmark::DoNotOptimize(prof);
    }
}
BENCHMARK(BM_SubsetSumProfile)->Arg(64)->Arg(128);

void BM_CountH(benchmark::State& state) {
    const uint32_t n = static_cast<uint32_t>(state.range(0));
    for (auto _ : state) {
        auto rep = census::count_h(2, n, n / 2);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_CountH)->Arg(16)->Arg(24)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_CountT(benchmark::State& state) {
    const uint32_t n = static_cast<uint32_t>(state.range(0));
    for (auto _ : state) {
        auto rep = census::count_t(n, n / 2);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_CountT)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_SpfTableBuild(benchmark::State& state) {
    const uint32_t deg = static_cast<uint32_t>(state.range(0));
    for (auto _ : state) {
        gfpoly::SpfTable table(2, deg, 40'000'000);
        benchmark::DoNotOptimize(table.entries());
    }
}
BENCHMARK(BM_SpfTableBuild)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_FactorizeAll(benchmark::State& state) {
    const uint32_t deg = static_cast<uint32_t>(state.range(0));
    const gfpoly::SpfTable table(2, deg, 40'000'000);
    const uint64_t space = uint64_t(1) << deg;
    for (auto _ : state) {
        uint64_t primes = 0;
        for (uint64_t r = 0; r < space; ++r)
            primes += gfpoly::factorize(gfpoly::unrank(2, deg, r), table).distinct_primes();
        benchmark::DoNotOptimize(primes);
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(space));
}
BENCHMARK(BM_FactorizeAll)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_PrimeCountSeq(benchmark::State& state) {
    for (auto _ : state) {
        primecount::PrimeCountSeq seq(2, 400);
        benchmark::DoNotOptimize(seq.count(400));
    }
}
BENCHMARK(BM_PrimeCountSeq);

void BM_PhiloxThroughput(benchmark::State& state) {
    rng::TrialStream stream(42, 0);
    uint64_t acc = 0;
    for (auto _ : state) acc += stream.below(1'000'000'007);
    benchmark::DoNotOptimize(acc);
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PhiloxThroughput);

void BM_SampleCycleType(benchmark::State& state) {
    const uint32_t n = static_cast<uint32_t>(state.range(0));
    rng::TrialStream stream(42, 0);
    for (auto _ : state) {
        auto parts = sampler::sample_cycle_type(n, stream);
        benchmark::DoNotOptimize(parts);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SampleCycleType)->Arg(30)->Arg(100);

void BM_EstimateT(benchmark::State& state) {
    for (auto _ : state) {
        auto est = sampler::estimate_t_density(30, 15, 10'000, 1, 1);
        benchmark::DoNotOptimize(est);
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * 10'000);
}
BENCHMARK(BM_EstimateT)->Unit(benchmark::kMillisecond);

void BM_ClusteringSums(benchmark::State& state) {
    const uint32_t maxtot = static_cast<uint32_t>(state.range(0));
    primecount::PrimeCountSeq seq(2, maxtot);
    divstats::SquarefreeSumConstraints c;
    c.max_total_degree = maxtot;
    c.max_prime_degree = maxtot;
    for (auto _ : state) {
        auto sums = divstats::sum_lwt_squarefree(seq, c);
        benchmark::DoNotOptimize(sums);
    }
}
BENCHMARK(BM_ClusteringSums)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_LowerBoundFamily(benchmark::State& state) {
    for (auto _ : state) {
        auto fam = divstats::build_lower_bound_family(2, 4096, 2);
        benchmark::DoNotOptimize(fam);
    }
}
BENCHMARK(BM_LowerBoundFamily)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
