#pragma once

#include "multab/bigint.hpp"
#include "multab/bitset.hpp"
#include "multab/gfpoly.hpp"
#include "multab/partitions.hpp"
#include "multab/primecount.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace multab::divstats {

// Divisor-degree statistics of a polynomial A given as distinct primes with
// exponents.  tau_by_degree[d] counts monic divisors of degree exactly d;
// distinct primes of equal degree contribute separately.
struct DivisorClustering {
    Bitset degree_set;                   // Ll(A): degrees of divisors, within [0, deg A]
    uint32_t distinct_degrees = 0;       // L(A) = |Ll(A)|
    std::vector<uint64_t> tau_by_degree; // tau_d(A)
    uint64_t tau = 0;                    // total divisor count
    uint64_t equal_degree_pairs = 0;     // W(A) = sum_d tau_d(A)^2
};

// (prime degree, exponent) pairs, one per distinct prime.
DivisorClustering clustering_of_primes(const std::vector<std::pair<uint32_t, uint32_t>>& primes);
DivisorClustering clustering(const gfpoly::Factorization& fact);
// Squarefree polynomial whose prime degrees form this multiset (repeated
// values = distinct primes of equal degree).
DivisorClustering clustering_squarefree(const std::vector<uint32_t>& prime_degrees);

struct LBoundReport {
    bool pass = true;
    uint32_t l_value = 0;
    uint64_t tau = 0;
    std::string violation; // empty when pass
};

// Validates the three structural bounds on L(A) = #distinct divisor degrees:
//  (1) L(A) <= min(tau(A), deg A + 1)
//  (2) L(AB) <= tau(B) * L(A) for every split of the primes into coprime A, B
//  (3) squarefree A = P_1 ... P_k with degrees ascending:
//      L(A) <= 2^{k-j} (deg(P_1...P_j) + 1) for every prefix j
LBoundReport check_l_bounds(const gfpoly::Factorization& fact);

struct SquarefreeSumConstraints {
    uint32_t max_total_degree = 0;
    uint32_t max_prime_degree = 0;
    uint32_t min_total_degree = 0;
    std::optional<uint32_t> prime_count; // exactly this many primes when set
};

struct WeightedSums {
    BigRat l_sum;   // sum of L(A) / |A|
    BigRat w_sum;   // sum of W(A) / |A|
    BigRat tau_sum; // sum of tau(A) / |A|
};

// Exact sums over squarefree A (grouped by prime-degree multiset, weighted by
// prod_e C(count(e), m_e) / q^{deg A}) subject to the constraints.
WeightedSums sum_lwt_squarefree(const primecount::PrimeCountSeq& seq,
                                const SquarefreeSumConstraints& c);

// Truncated clustering sum: over squarefree A with prime degrees <= d and
// deg A <= max_total_degree,
//   sum L(A) / (|A| * (d + deg P_max(A) - deg A)^2),
// omitting the finitely many terms whose denominator vanishes.
BigRat truncated_s(const primecount::PrimeCountSeq& seq, uint32_t d,
                   uint32_t max_total_degree);

// Family of occupancy vectors (b_1..b_J) used in the lower-bound construction:
// b_j = 0 for j <= M, 0 <= b_j <= min(M j, M (J - j + 1)) for M < j <= J,
// where k = floor(log2 b) - 2M and J = M + k - 1.  For each vector,
//   f(b) = sum_{h=M}^{J} 2^{M - 1 - h + b_M + ... + b_h}.
struct LowerBoundFamily {
    uint32_t m_param = 0;
    uint32_t k = 0;
    uint32_t j_count = 0;              // J
    std::vector<uint32_t> boundaries;  // interval right endpoints l_1..l_J
    uint64_t family_size = 0;
    BigRat min_f;                      // smallest f over the family
    BigRat weight_sum;                 // sum of 1 / (prod_j b_j! * f(b))
    bool degree_cap_ok = false;        // every vector: sum_j b_j l_j <= b / 8
    double ratio_vs_stirling = 0;      // weight_sum / (k^{k-1} / k!)
    double ratio_vs_k32 = 0;           // weight_sum * k^{3/2}
};

LowerBoundFamily build_lower_bound_family(uint64_t q, uint64_t b, uint32_t m_param);

} // namespace multab::divstats
