#include "multab/realcmp.hpp"

#include <stdexcept>

namespace multab::realcmp {

namespace {

constexpr mpfr_prec_t kStartPrec = 128;
constexpr mpfr_prec_t kMaxPrec = 1 << 20;

// Sign of (x - target) where target is enclosed by evaluating `fill` with
// downward then upward rounding; 0 is never returned for irrational targets.
template <class Fill>
int cmp_with_enclosed(const BigRat& x, Fill&& fill) {
    for (mpfr_prec_t prec = kStartPrec; prec <= kMaxPrec; prec *= 2) {
        Real lo(prec), hi(prec);
        fill(lo.get(), MPFR_RNDD);
        fill(hi.get(), MPFR_RNDU);
        if (mpfr_cmp_q(lo.get(), x.get_mpq_t()) > 0) return -1; // x < target
        if (mpfr_cmp_q(hi.get(), x.get_mpq_t()) < 0) return 1;  // x > target
    }
    throw std::runtime_error("cmp_with_enclosed: comparison not certifiable");
}

} // namespace

int cmp_with_log(const BigRat& x, const BigRat& arg) {
    if (sgn(arg) <= 0) throw std::invalid_argument("cmp_with_log: arg must be > 0");
    if (arg == 1) return sgn(x);
    return cmp_with_enclosed(x, [&](mpfr_ptr out, mpfr_rnd_t rnd) {
        mpfr_set_q(out, arg.get_mpq_t(), rnd);
        mpfr_log(out, out, rnd);
    });
}

int cmp_with_log2(const BigRat& x) {
    return cmp_with_enclosed(x, [&](mpfr_ptr out, mpfr_rnd_t rnd) {
        mpfr_const_log2(out, rnd);
    });
}

Bracket log_bracket(const BigRat& arg) {
    if (sgn(arg) <= 0) throw std::invalid_argument("log_bracket: arg must be > 0");
    Real lo(256), hi(256);
    mpfr_set_q(lo.get(), arg.get_mpq_t(), MPFR_RNDD);
    mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_set_q(hi.get(), arg.get_mpq_t(), MPFR_RNDU);
    mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
    return {mpfr_get_d(lo.get(), MPFR_RNDD), mpfr_get_d(hi.get(), MPFR_RNDU)};
}

Bracket to_double_bracket(const BigRat& x) {
    Real t(256);
    mpfr_set_q(t.get(), x.get_mpq_t(), MPFR_RNDD);
    const double lo = mpfr_get_d(t.get(), MPFR_RNDD);
    mpfr_set_q(t.get(), x.get_mpq_t(), MPFR_RNDU);
    const double hi = mpfr_get_d(t.get(), MPFR_RNDU);
    return {lo, hi};
}

} // namespace multab::realcmp
