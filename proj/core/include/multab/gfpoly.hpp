#pragma once

#include "multab/errors.hpp"
#include "multab/partitions.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace multab::gfpoly {

// Monic polynomial over F_p.  coeffs[i] is the coefficient of x^i for
// i < degree; the leading coefficient 1 is implicit.  Degree 0 is the
// constant polynomial 1.
struct MonicPoly {
    uint32_t p = 2;
    std::vector<uint32_t> coeffs;

    uint32_t degree() const { return static_cast<uint32_t>(coeffs.size()); }
    std::string to_string() const; // diagnostics, e.g. "x^2+2x+1"
    bool operator==(const MonicPoly&) const = default;
};

MonicPoly one(uint32_t p);

// Bijection between monic degree-n polynomials and [0, p^n):
// rank = sum_i coeffs[i] * p^i.  Requires p^n to fit in 63 bits.
uint64_t rank_of(const MonicPoly& f);
MonicPoly unrank(uint32_t p, uint32_t n, uint64_t rank);

MonicPoly poly_mul(const MonicPoly& a, const MonicPoly& b);

// Quotient of f by a monic divisor d when the division is exact;
// throws std::invalid_argument otherwise.
MonicPoly poly_divexact(const MonicPoly& f, const MonicPoly& d);

// True iff d divides f; on success and quot != nullptr stores the quotient.
bool poly_divides(const MonicPoly& f, const MonicPoly& d, MonicPoly* quot = nullptr);

// Exhaustive trial division by every monic polynomial of degree <= deg(f)/2.
// Independent of the sieve; oracle-scale only (guarded by `budget` trial
// divisors).
bool is_irreducible(const MonicPoly& f, uint64_t budget = 50'000'000);

// Multiset of monic prime factors, distinct primes ordered by
// (degree, rank) ascending.
struct Factorization {
    struct Term {
        uint32_t degree;
        uint64_t rank;
        uint32_t multiplicity;
        bool operator==(const Term&) const = default;
    };
    std::vector<Term> terms;

    uint64_t total_degree() const;
    uint32_t distinct_primes() const { return static_cast<uint32_t>(terms.size()); }
    uint64_t factor_count_with_multiplicity() const;
    int mobius() const;                   // 0 if not squarefree, else (-1)^#primes
    bool squarefree() const;
    bool squarefull() const;              // every multiplicity >= 2 (true for 1)
    uint32_t largest_prime_degree() const;  // 0 for the empty factorization
    uint32_t smallest_prime_degree() const; // UINT32_MAX for the empty factorization
};

// Smallest-prime-factor table over all monic polynomials of degree <= max_degree.
// Entry for a composite F is the index (in discovery order: degree, then rank)
// of its prime divisor that is smallest by (degree, rank); a prime maps to its
// own index.  Refuses to allocate more than `max_entries` table slots.
class SpfTable {
public:
    static constexpr uint64_t kDefaultBudget = 100'000'000;
    static constexpr uint32_t kUnset = UINT32_MAX;

    SpfTable(uint32_t p, uint32_t max_degree, uint64_t max_entries = kDefaultBudget);

    uint32_t p() const { return p_; }
    uint32_t max_degree() const { return max_degree_; }
    uint64_t entries() const { return entries_; }

    // Index of the smallest prime factor of the degree-n polynomial of the
    // given rank; requires 1 <= n <= max_degree.
    uint32_t spf_index(uint32_t n, uint64_t rank) const;

    bool is_prime(uint32_t n, uint64_t rank) const;

    uint64_t prime_total() const { return prime_ranks_.size(); }
    uint64_t prime_count(uint32_t degree) const; // primes of exactly this degree
    uint32_t prime_degree(uint32_t index) const;
    uint64_t prime_rank(uint32_t index) const { return prime_ranks_[index]; }
    MonicPoly prime_poly(uint32_t index) const;

private:
    uint32_t p_;
    uint32_t max_degree_;
    uint64_t entries_;
    std::vector<std::vector<uint32_t>> table_;   // [degree][rank] -> prime index
    std::vector<uint64_t> prime_ranks_;          // sorted by (degree, rank)
    std::vector<uint64_t> degree_offsets_;       // first prime index of each degree
};

Factorization factorize(const MonicPoly& f, const SpfTable& table);

// Degree multiset of the factorization as a partition of deg(f),
// e.g. x^2(x+1) over F_2 -> "1,1,1".
partitions::Partition factorization_type(const Factorization& fact);
partitions::Partition factorization_type(const MonicPoly& f, const SpfTable& table);

// Enumerates B over all monic polynomials of degree m in rank order while
// maintaining rank(A*B) incrementally (amortized O(deg A) per step).
class ProductScanner {
public:
    ProductScanner(const MonicPoly& a, uint32_t m);

    uint64_t product_rank() const { return rank_; }
    uint32_t product_degree() const { return n_; }
    bool next(); // advance B by one rank; false once exhausted

private:
    void add_shifted_a(uint32_t shift); // f += x^shift * A, rank updated

    uint32_t p_;
    uint32_t m_;
    uint32_t n_;
    std::vector<uint32_t> full_a_; // coefficients of A including leading 1
    std::vector<uint32_t> digits_; // coefficients of B below its leading 1
    std::vector<uint32_t> f_;      // coefficients of A*B below its leading 1
    std::vector<uint64_t> pw_;     // p^0 .. p^{n-1}
    uint64_t rank_;
};

} // namespace multab::gfpoly
