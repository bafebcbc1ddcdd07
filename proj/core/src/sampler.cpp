#include "multab/sampler.hpp"

#include "multab/census.hpp"
#include "multab/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace multab::sampler {

WilsonInterval wilson95(uint64_t hits, uint64_t trials) {
    if (trials == 0) throw std::invalid_argument("wilson95: trials must be >= 1");
    if (hits > trials) throw std::invalid_argument("wilson95: hits > trials");
    constexpr double z = 1.959963984540054; // 97.5th normal quantile
    const double t = static_cast<double>(trials);
    const double phat = static_cast<double>(hits) / t;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / t;
    const double center = (phat + z2 / (2 * t)) / denom;
    const double half =
        z * std::sqrt(phat * (1 - phat) / t + z2 / (4 * t * t)) / denom;
    // At boundary counts the lower/upper endpoint is exactly 0/1; avoid the
    // ulp-sized residue of computing center - half in floating point.
    const double low = hits == 0 ? 0.0 : std::max(0.0, center - half);
    const double high = hits == trials ? 1.0 : std::min(1.0, center + half);
    return {low, high};
}

std::string SampleEstimate::csv_header() {
    return "kind,q,n,b,count,density,predicted,ratio,trials,seed,ci_low,ci_high";
}

std::string SampleEstimate::csv_row() const {
    std::string s = kind;
    s += ',';
    if (q != 0) s += std::to_string(q);
    s += ',' + std::to_string(n) + ',' + std::to_string(b);
    s += ',' + std::to_string(hits);
    s += ',' + format_g15(estimate);
    s += ',' + (std::isnan(predicted) ? std::string("nan") : format_g15(predicted));
    s += ',';
    if (!std::isnan(ratio)) s += format_g15(ratio);
    s += ',' + std::to_string(trials) + ',' + std::to_string(seed);
    s += ',' + format_g15(ci_low) + ',' + format_g15(ci_high);
    return s;
}

nlohmann::ordered_json SampleEstimate::json_row() const {
    nlohmann::ordered_json j;
    j["kind"] = kind;
    if (q != 0) j["q"] = q; else j["q"] = nullptr;
    j["n"] = n;
    j["b"] = b;
    j["count"] = hits;
    j["density"] = estimate;
    j["predicted"] = std::isnan(predicted) ? nlohmann::ordered_json(nullptr)
                                           : nlohmann::ordered_json(predicted);
    j["ratio"] = std::isnan(ratio) ? nlohmann::ordered_json(nullptr)
                                   : nlohmann::ordered_json(ratio);
    j["trials"] = trials;
    j["seed"] = seed;
    j["ci_low"] = ci_low;
    j["ci_high"] = ci_high;
    return j;
}

std::vector<uint32_t> sample_cycle_type(uint32_t n, rng::TrialStream& stream) {
    std::vector<uint32_t> parts;
    uint32_t remaining = n;
    while (remaining > 0) {
        const uint32_t len = static_cast<uint32_t>(stream.below(remaining)) + 1;
        parts.push_back(len);
        remaining -= len;
    }
    return parts;
}

namespace {

// Runs `trials` independent 0/1 experiments, trial t seeded by (seed, t), and
// sums hits.  The per-trial substreams make the total independent of the
// thread count and schedule.
template <class Trial>
uint64_t count_hits(uint64_t trials, uint64_t seed, unsigned threads, Trial trial) {
    if (threads <= 1) {
        uint64_t hits = 0;
        for (uint64_t t = 0; t < trials; ++t) {
            rng::TrialStream stream(seed, t);
            hits += trial(stream) ? 1 : 0;
        }
        return hits;
    }
    std::vector<uint64_t> partial(threads, 0);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            uint64_t local = 0;
            for (uint64_t t = w; t < trials; t += threads) {
                rng::TrialStream stream(seed, t);
                local += trial(stream) ? 1 : 0;
            }
            partial[w] = local;
        });
    }
    for (auto& th : pool) th.join();
    uint64_t hits = 0;
    for (uint64_t h : partial) hits += h;
    return hits;
}

SampleEstimate finish(std::string kind, uint64_t q, uint32_t n, uint32_t b,
                      uint64_t trials, uint64_t hits, uint64_t seed) {
    SampleEstimate e;
    e.kind = std::move(kind);
    e.q = q;
    e.n = n;
    e.b = b;
    e.trials = trials;
    e.hits = hits;
    e.seed = seed;
    e.estimate = trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
    e.predicted = census::predicted_density(b);
    e.ratio = e.estimate / e.predicted;
    const WilsonInterval ci = wilson95(hits, trials);
    e.ci_low = ci.low;
    e.ci_high = ci.high;
    return e;
}

} // namespace

SampleEstimate estimate_t_density(uint32_t n, uint32_t b, uint64_t trials,
                                  uint64_t seed, unsigned threads) {
    if (b > n) throw std::invalid_argument("estimate_t_density: b > n");
    if (trials == 0) throw std::invalid_argument("estimate_t_density: trials >= 1");
    const uint64_t hits = count_hits(trials, seed, threads, [&](rng::TrialStream& s) {
        const auto parts = sample_cycle_type(n, s);
        return partitions::parts_have_subset_sum(parts, b);
    });
    return finish("T", 0, n, b, trials, hits, seed);
}

SampleEstimate estimate_h_density(const gfpoly::SpfTable& table, uint32_t n,
                                  uint32_t b, uint64_t trials, uint64_t seed,
                                  unsigned threads) {
    if (b > n) throw std::invalid_argument("estimate_h_density: b > n");
    if (n > table.max_degree())
        throw std::invalid_argument("estimate_h_density: table does not cover n");
    if (trials == 0) throw std::invalid_argument("estimate_h_density: trials >= 1");
    uint64_t total = 1;
    for (uint32_t i = 0; i < n; ++i) total *= table.p();
    const uint64_t hits = count_hits(trials, seed, threads, [&](rng::TrialStream& s) {
        const uint64_t r = s.below(total);
        const auto fact = gfpoly::factorize(gfpoly::unrank(table.p(), n, r), table);
        std::vector<uint32_t> parts;
        for (const auto& t : fact.terms)
            for (uint32_t i = 0; i < t.multiplicity; ++i) parts.push_back(t.degree);
        return partitions::parts_have_subset_sum(parts, b);
    });
    return finish("H", table.p(), n, b, trials, hits, seed);
}

SampleEstimate estimate_h_density(uint32_t p, uint32_t n, uint32_t b,
                                  uint64_t trials, uint64_t seed, unsigned threads,
                                  uint64_t budget) {
    const gfpoly::SpfTable table(p, n, budget);
    return estimate_h_density(table, n, b, trials, seed, threads);
}

} // namespace multab::sampler
