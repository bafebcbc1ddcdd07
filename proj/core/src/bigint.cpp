#include "multab/bigint.hpp"

#include <cstdio>

namespace multab {

BigInt pow_big(const BigInt& base, uint64_t exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp));
    return r;
}

BigInt pow_big(uint64_t base, uint64_t exp) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(exp));
    return r;
}

BigInt factorial(uint64_t n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

BigInt binomial(const BigInt& n, uint64_t k) {
    if (sgn(n) < 0) return 0; // counts only; negative upper index never valid here
    BigInt r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

BigInt multichoose(const BigInt& n, uint64_t k) {
    if (k == 0) return 1;
    if (sgn(n) <= 0) return 0;
    return binomial(n + static_cast<unsigned long>(k) - 1, k);
}

double to_double(const BigRat& x) { return x.get_d(); }
double to_double(const BigInt& x) { return x.get_d(); }

std::string format_g15(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

} // namespace multab
