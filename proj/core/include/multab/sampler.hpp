#pragma once

#include "multab/bigint.hpp"
#include "multab/gfpoly.hpp"
#include "multab/rng.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace multab::sampler {

struct WilsonInterval {
    double low, high;
};

// 95% Wilson score interval for hits/trials.
WilsonInterval wilson95(uint64_t hits, uint64_t trials);

// Monte-Carlo density estimate.  kind "H" or "T"; q is 0 for "T".
struct SampleEstimate {
    std::string kind;
    uint64_t q = 0;
    uint64_t n = 0;
    uint64_t b = 0;
    uint64_t trials = 0;
    uint64_t hits = 0;
    uint64_t seed = 0;
    double estimate = 0;
    double predicted = 0; // predicted density b^{-delta}(log b)^{-3/2}; NaN b < 2
    double ratio = 0;     // estimate / predicted
    double ci_low = 0;
    double ci_high = 0;

    static std::string csv_header();
    std::string csv_row() const;
    nlohmann::ordered_json json_row() const;
};

// Cycle type of a uniform random permutation of S_n (exact law: the cycle
// containing the smallest unplaced element has length uniform on
// {1..remaining}).  Returned parts are unsorted.
std::vector<uint32_t> sample_cycle_type(uint32_t n, rng::TrialStream& stream);

// P(sigma in T(n, b)) estimated over `trials` independent permutations.
// Trial t uses substream (seed, t), so results do not depend on threading.
SampleEstimate estimate_t_density(uint32_t n, uint32_t b, uint64_t trials,
                                  uint64_t seed, unsigned threads = 1);

// P(F in H(n, b)) for uniform monic degree-n F over F_p, factorized via the
// given table (which must cover degree n).
SampleEstimate estimate_h_density(const gfpoly::SpfTable& table, uint32_t n,
                                  uint32_t b, uint64_t trials, uint64_t seed,
                                  unsigned threads = 1);

// Convenience overload building its own table under the given entry budget.
SampleEstimate estimate_h_density(uint32_t p, uint32_t n, uint32_t b,
                                  uint64_t trials, uint64_t seed,
                                  unsigned threads = 1,
                                  uint64_t budget = gfpoly::SpfTable::kDefaultBudget);

} // namespace multab::sampler
