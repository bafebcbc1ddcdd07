#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace multab {

// Exact arbitrary-precision integer / rational used for all counts and
// probability masses.  Thin aliases so the rest of the code never names the
// backing library directly.
using BigInt = mpz_class;
using BigRat = mpq_class;

// base^exp for machine-word exponents.
BigInt pow_big(const BigInt& base, uint64_t exp);
BigInt pow_big(uint64_t base, uint64_t exp);

BigInt factorial(uint64_t n);

// Binomial coefficient C(n, k) with arbitrarily large n; 0 when n < k >= 0.
BigInt binomial(const BigInt& n, uint64_t k);

// Multiset coefficient C(n + k - 1, k): ways to pick k items from n types
// with repetition.  multichoose(0, 0) == 1, multichoose(0, k>0) == 0.
BigInt multichoose(const BigInt& n, uint64_t k);

double to_double(const BigRat& x);
double to_double(const BigInt& x);

// Shortest-faithful decimal for doubles ("%.17g" trimmed by printf %g rules is
// overkill here; all consumers pin "%.15g").
std::string format_g15(double x);

} // namespace multab
