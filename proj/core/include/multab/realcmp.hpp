#pragma once

#include "multab/bigint.hpp"

#include <mpfr.h>

namespace multab::realcmp {

// RAII wrapper for an mpfr value at a fixed precision.
class Real {
public:
    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    Real(const Real&) = delete;
    Real& operator=(const Real&) = delete;
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

// Certified sign of (x - log(arg)) for rational arg > 0.  Escalates working
// precision until the comparison is unambiguous; exact when arg == 1.
// log(arg) is irrational for rational arg != 1, so this terminates.
int cmp_with_log(const BigRat& x, const BigRat& arg);

// Certified sign of (x - log 2).
int cmp_with_log2(const BigRat& x);

// Directed-rounding double enclosure [lo, hi] of log(arg), arg > 0.
struct Bracket {
    double lo, hi;
};
Bracket log_bracket(const BigRat& arg);

// Directed-rounding double enclosure of a rational.
Bracket to_double_bracket(const BigRat& x);

} // namespace multab::realcmp
