#pragma once

#include "multab/bigint.hpp"
#include "multab/gfpoly.hpp"
#include "multab/partitions.hpp"
#include "multab/primecount.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace multab::census {

// Parameters of the predicted density b^{-delta} (log b)^{-3/2} with
// delta = 1 - (1 + log log 2) / log 2.
struct AsymptoticParams {
    static double delta();
    // delta rounded to `places` decimal places, e.g. "0.086071" at 6.
    static std::string delta_decimal(int places);
    static constexpr double log_exponent = 1.5;
};

// Predicted density b^{-delta} (log b)^{-3/2}; NaN for b < 2.
double predicted_density(uint64_t b);

// One counted cell.  kind is "H", "M" or "T"; q is 0 for kind "T".
struct CountReport {
    std::string kind;
    uint64_t q = 0;
    uint64_t n = 0;
    uint64_t b = 0;
    BigInt count;
    double density = 0;    // count / q^n, or count / n! for kind "T"
    double predicted = 0;  // total * b^{-delta} (log b)^{-3/2}; NaN when b < 2
    double ratio = 0;      // count / predicted; NaN when b < 2

    static std::string csv_header();
    std::string csv_row() const;
    nlohmann::ordered_json json_row() const;
};

struct CensusOptions {
    unsigned threads = 1;
    uint32_t partition_cap = 100; // refuse exact census beyond this n
};

// |H(n, b)|: monic degree-n polynomials over F_q with a monic divisor of
// degree exactly b.  Exact, via sum over factorization types with a
// b-subpartition.
CountReport count_h(uint64_t q, uint32_t n, uint32_t b, const CensusOptions& opts = {});

// |T(n, b)|: permutations in S_n fixing some set of size b as a product of two
// disjoint sub-permutations, i.e. whose cycle type has a b-subpartition.
CountReport count_t(uint32_t n, uint32_t b, const CensusOptions& opts = {});

// |M(2n)|: multiplication-table count, count_h(q, 2n, n).
CountReport count_m(uint64_t q, uint32_t two_n, const CensusOptions& opts = {});

// Same counts for several b in one enumeration pass.
std::vector<BigInt> count_h_many(uint64_t q, uint32_t n, const std::vector<uint32_t>& bs,
                                 const CensusOptions& opts = {});
std::vector<BigInt> count_t_many(uint32_t n, const std::vector<uint32_t>& bs,
                                 const CensusOptions& opts = {});

// Full report rows for several b in one enumeration pass.
std::vector<CountReport> count_h_reports(uint64_t q, uint32_t n,
                                         const std::vector<uint32_t>& bs,
                                         const CensusOptions& opts = {});
std::vector<CountReport> count_t_reports(uint32_t n, const std::vector<uint32_t>& bs,
                                         const CensusOptions& opts = {});

// Squarefree variant: squarefree F of degree n with a degree-b divisor
// (binomial in place of multichoose).
BigInt count_hstar(uint64_t q, uint32_t n, uint32_t b, const CensusOptions& opts = {});

// --- brute-force oracles -------------------------------------------------

// Factorization-type histogram of all monic degree-n polynomials:
// (type, how many F realize it), types in decreasing lexicographic order.
std::vector<std::pair<partitions::Partition, uint64_t>>
brute_type_census(const gfpoly::SpfTable& table, uint32_t n);

// |H(n, b)| by exhaustive enumeration.  Uses the factorize route while the
// SPF table fits the entry budget, otherwise falls back to marking every
// product G*H (deg G = b) in a p^n-bit bitmap.
BigInt brute_h(uint32_t p, uint32_t n, uint32_t b,
               uint64_t budget = gfpoly::SpfTable::kDefaultBudget);

// Product-marking route only (definitional: F has a degree-b divisor iff it
// appears among the products).
BigInt brute_h_products(uint32_t p, uint32_t n, uint32_t b);

// |H(n, b)| for all b = 0..n in one factorize scan over the given table.
std::vector<BigInt> brute_h_all(const gfpoly::SpfTable& table, uint32_t n);

// |T(n, b)| by enumerating all n! permutations and decomposing into cycles.
BigInt brute_t(uint32_t n, uint32_t b);
std::vector<BigInt> brute_t_all(uint32_t n);

// --- rough and squarefull censuses ----------------------------------------------------

// Number of monic degree-n F all of whose prime factors have degree >= d
// (d-rough), via the Euler product over degrees >= d.
BigInt count_rough(uint64_t q, uint32_t n, uint32_t d);
// Same for every d = 1..n by factorize scan: histogram of smallest prime
// factor degrees.
std::vector<BigInt> brute_rough_all(const gfpoly::SpfTable& table, uint32_t n);

// Number of monic squarefull degree-n F (every prime multiplicity >= 2),
// via the recurrence from (1 - q u^6) / ((1 - q u^2)(1 - q u^3)).
BigInt count_squarefull(uint64_t q, uint32_t n);
BigInt brute_squarefull(const gfpoly::SpfTable& table, uint32_t n);

// Certified upper bound on sum over squarefull F with deg F >= C of 1/|F|.
// Exact partial sum plus a proven remainder (a_m <= (m+1) q^{m/2}).
BigRat squarefull_tail_upper(uint64_t q, uint32_t min_degree);

// Exact partial sum over squarefull F with deg F <= max_degree of tau(F)/|F|;
// monotone in max_degree and bounded.
BigRat squarefull_tau_sum(uint64_t q, uint32_t max_degree);

// --- deviation from the permutation model ---------------------------------

// max over partitions lambda of n of
//   |count_with_type(q, lambda) - P(lambda) q^n| / q^{n-1},
// the worst constant in the degree-n type-count approximation.
struct TypeDiscrepancy {
    BigRat value;
    partitions::Partition argmax;
};
TypeDiscrepancy type_discrepancy(uint64_t q, uint32_t n);

} // namespace multab::census
