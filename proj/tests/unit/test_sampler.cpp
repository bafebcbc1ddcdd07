#include <doctest.h>

#include "multab/census.hpp"
#include "multab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

using namespace multab;
using namespace multab::sampler;

TEST_SUITE_BEGIN("sampler");

TEST_CASE("wilson interval anchors and edge cases") {
    const auto mid = wilson95(50, 100);
    CHECK(mid.low > 0.40);
    CHECK(mid.high < 0.60);
    CHECK(mid.low < 0.5);
    CHECK(mid.high > 0.5);
    const auto none = wilson95(0, 100);
    CHECK(none.low == 0.0);
    CHECK(none.high > 0.0);
    CHECK(none.high < 0.06);
    const auto all = wilson95(100, 100);
    CHECK(all.high == 1.0);
    CHECK(all.low > 0.94);
    CHECK_THROWS_AS(wilson95(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(wilson95(5, 4), std::invalid_argument);
}

TEST_CASE("wilson interval shrinks like 1/sqrt(trials)") {
    const auto small = wilson95(500, 1000);
    const auto large = wilson95(50000, 100000);
    CHECK(large.high - large.low < (small.high - small.low) / 8);
}

TEST_CASE("cycle-type sampling reproduces the exact law") {
    // n = 5: compare sampled frequencies of all 7 cycle types with their
    // exact probabilities at 5 sigma
    const uint32_t n = 5;
    const int trials = 60000;
    rng::TrialStream stream(123, 0);
    std::map<std::string, int> hist;
    for (int i = 0; i < trials; ++i) {
        auto parts = sample_cycle_type(n, stream);
        std::sort(parts.begin(), parts.end(), std::greater<>());
        partitions::Partition lam{parts};
        ++hist[lam.to_string()];
    }
    int seen = 0;
    partitions::for_each_partition(n, [&](const partitions::Partition& lam) {
        const double p = to_double(partitions::cycle_type_probability(lam));
        const double mean = trials * p;
        const double sigma = std::sqrt(trials * p * (1 - p));
        const auto it = hist.find(lam.to_string());
        const int got = it == hist.end() ? 0 : it->second;
        CHECK(std::abs(got - mean) < 5 * sigma);
        seen += got;
    });
    CHECK(seen == trials);
}

TEST_CASE("permutation estimates: determinism and thread invariance") {
    const auto a = estimate_t_density(20, 10, 20000, 42, 1);
    const auto b = estimate_t_density(20, 10, 20000, 42, 4);
    const auto c = estimate_t_density(20, 10, 20000, 42, 3);
    CHECK(a.hits == b.hits);
    CHECK(a.hits == c.hits);
    CHECK(a.estimate == b.estimate);
    const auto d = estimate_t_density(20, 10, 20000, 43, 1);
    CHECK(a.hits != d.hits); // different seed, different trials
}

TEST_CASE("permutation estimate brackets the exact density") {
    const auto exact = census::count_t(12, 6);
    int covered = 0;
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        const auto est = estimate_t_density(12, 6, 100000, seed, 1);
        CHECK(est.trials == 100000);
        CHECK(est.hits <= est.trials);
        if (est.ci_low <= exact.density && exact.density <= est.ci_high)
            ++covered;
    }
    CHECK(covered >= 4); // 95% intervals; all five cover in practice
}

TEST_CASE("polynomial estimates agree with exact counts in both worlds") {
    // q = 2, n = 16
    {
        gfpoly::SpfTable table(2, 16);
        const auto exact = census::count_h(2, 16, 8);
        const auto est = estimate_h_density(table, 16, 8, 100000, 11, 1);
        CHECK(est.ci_low <= exact.density);
        CHECK(exact.density <= est.ci_high);
        // interval is tight at 1e5 trials
        CHECK(est.ci_high - est.ci_low < 0.01);
    }
    // q = 3, n = 12
    {
        gfpoly::SpfTable table(3, 12);
        const auto exact = census::count_h(3, 12, 6);
        const auto est = estimate_h_density(table, 12, 6, 100000, 12, 1);
        CHECK(est.ci_low <= exact.density);
        CHECK(exact.density <= est.ci_high);
    }
}

TEST_CASE("polynomial sampling is thread invariant") {
    gfpoly::SpfTable table(2, 14);
    const auto a = estimate_h_density(table, 14, 7, 30000, 5, 1);
    const auto b = estimate_h_density(table, 14, 7, 30000, 5, 4);
    CHECK(a.hits == b.hits);
}

TEST_CASE("estimate report rows are well-formed") {
    const auto est = estimate_t_density(30, 15, 1000, 1, 1);
    CHECK(est.kind == "T");
    CHECK(est.q == 0);
    CHECK(est.n == 30);
    CHECK(est.b == 15);
    CHECK(est.seed == 1);
    CHECK(est.estimate == doctest::Approx(double(est.hits) / 1000).epsilon(1e-12));
    CHECK(est.ci_low <= est.estimate);
    CHECK(est.estimate <= est.ci_high);
    CHECK(SampleEstimate::csv_header() ==
          "kind,q,n,b,count,density,predicted,ratio,trials,seed,ci_low,ci_high");
    const auto j = est.json_row();
    CHECK(j.at("count") == est.hits);
    CHECK(j.at("q").is_null());
    CHECK(j.at("trials") == 1000);
}

TEST_SUITE_END();
