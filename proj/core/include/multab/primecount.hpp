#pragma once

#include "multab/bigint.hpp"
#include "multab/partitions.hpp"

#include <cstdint>
#include <vector>

namespace multab::primecount {

// Prime-power detection; on success optionally reports base and exponent.
bool is_prime_power(uint64_t q, uint64_t* base = nullptr, uint32_t* exponent = nullptr);
std::vector<uint64_t> prime_powers_up_to(uint64_t limit);

// Number of monic irreducible polynomials of degree d over F_q:
// (1/d) * sum_{e | d} mu(d/e) q^e.  Requires q to be a prime power >= 2.
BigInt prime_poly_count(uint64_t q, uint32_t d);

// Cached sequence of prime_poly_count(q, 1..max_degree).
class PrimeCountSeq {
public:
    PrimeCountSeq(uint64_t q, uint32_t max_degree);

    uint64_t q() const { return q_; }
    uint32_t max_degree() const { return max_degree_; }
    const BigInt& count(uint32_t d) const;
    BigRat mass(uint32_t d) const; // count(d) / q^d

private:
    uint64_t q_;
    uint32_t max_degree_;
    std::vector<BigInt> counts_; // counts_[d-1] = prime_poly_count(q, d)
};

// Number of monic degree-n polynomials over F_q with factorization type
// `type`: prod_d multichoose(prime_poly_count(q, d), multiplicity of d).
BigInt count_with_type(const PrimeCountSeq& seq, const partitions::Partition& type);
BigInt count_with_type(uint64_t q, const partitions::Partition& type);

// Exact sum of 1/|P| over monic primes with d1 <= deg P <= d2.
BigRat inverse_prime_sum(uint64_t q, uint32_t d1, uint32_t d2);

// sum_{deg P <= d} |P|^{-(1 - 1/(d log q))}.  The tempering exponent turns
// each term into (count(e)/q^e) * e^{e/d}, so the sum grows like log d.
double tempered_prime_sum(uint64_t q, uint32_t d);

struct DegreeInterval {
    uint32_t lo = 0, hi = 0;  // prime degrees lo..hi inclusive
    bool overflow = false;    // single degree whose own mass exceeds log 2
    bool exact = false;       // exact_mass holds the exact rational mass
    BigRat exact_mass;
    double mass_lo = 0;       // certified enclosure of sum_{lo<=e<=hi} count(e)/q^e
    double mass_hi = 0;
};

struct DegreeIntervals {
    uint64_t q = 0;
    std::vector<DegreeInterval> intervals;
    // Right endpoint of interval j (1-based); boundary(0) == 0.
    uint32_t boundary(uint32_t j) const;
};

// Greedy split of prime degrees 1, 2, ... into consecutive intervals, each
// extended while its mass sum_{deg P in D_j} 1/|P| stays <= log 2 (decided by
// certified interval arithmetic with precision escalation).  A first degree
// whose mass alone exceeds log 2 forms a singleton interval with
// overflow = true, so the construction always advances.
DegreeIntervals build_degree_intervals(uint64_t q, uint32_t interval_count);

} // namespace multab::primecount
