#include "multab/primecount.hpp"

#include "multab/errors.hpp"
#include "multab/realcmp.hpp"

#include <mpfr.h>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace multab::primecount {

bool is_prime_power(uint64_t q, uint64_t* base, uint32_t* exponent) {
    if (q < 2) return false;
    uint64_t spf = 0;
    if (q % 2 == 0) {
        spf = 2;
    } else {
        for (uint64_t f = 3; f * f <= q; f += 2) {
            if (q % f == 0) { spf = f; break; }
        }
        if (spf == 0) spf = q; // q itself prime
    }
    uint64_t rest = q;
    uint32_t e = 0;
    while (rest % spf == 0) { rest /= spf; ++e; }
    if (rest != 1) return false;
    if (base) *base = spf;
    if (exponent) *exponent = e;
    return true;
}

std::vector<uint64_t> prime_powers_up_to(uint64_t limit) {
    std::vector<uint64_t> out;
    for (uint64_t q = 2; q <= limit; ++q)
        if (is_prime_power(q)) out.push_back(q);
    return out;
}

namespace {

std::vector<uint32_t> prime_factors(uint32_t d) {
    std::vector<uint32_t> out;
    for (uint32_t f = 2; f * f <= d; ++f) {
        if (d % f == 0) {
            out.push_back(f);
            while (d % f == 0) d /= f;
        }
    }
    if (d > 1) out.push_back(d);
    return out;
}

} // namespace

BigInt prime_poly_count(uint64_t q, uint32_t d) {
    if (!is_prime_power(q))
        throw std::invalid_argument("prime_poly_count: q must be a prime power >= 2");
    if (d == 0) throw std::invalid_argument("prime_poly_count: degree must be >= 1");
    const auto pf = prime_factors(d);
    BigInt acc = 0;
    // sum over squarefree divisors s of d: mu(s) * q^{d/s}
    for (uint32_t mask = 0; mask < (1u << pf.size()); ++mask) {
        uint32_t s = 1;
        for (size_t i = 0; i < pf.size(); ++i)
            if (mask & (1u << i)) s *= pf[i];
        const BigInt term = pow_big(q, d / s);
        if (__builtin_popcount(mask) % 2 == 0) acc += term; else acc -= term;
    }
    BigInt out;
    mpz_divexact_ui(out.get_mpz_t(), acc.get_mpz_t(), d);
    return out;
}

PrimeCountSeq::PrimeCountSeq(uint64_t q, uint32_t max_degree)
    : q_(q), max_degree_(max_degree) {
    counts_.reserve(max_degree);
    for (uint32_t d = 1; d <= max_degree; ++d)
        counts_.push_back(prime_poly_count(q, d));
}

const BigInt& PrimeCountSeq::count(uint32_t d) const {
    if (d == 0 || d > max_degree_)
        throw std::invalid_argument("PrimeCountSeq::count: degree out of range");
    return counts_[d - 1];
}

BigRat PrimeCountSeq::mass(uint32_t d) const {
    BigRat r(count(d));
    r /= BigRat(pow_big(q_, d));
    return r;
}

BigInt count_with_type(const PrimeCountSeq& seq, const partitions::Partition& type) {
    BigInt acc = 1;
    for (const auto& [d, m] : type.multiplicities()) {
        acc *= multichoose(seq.count(d), m);
        if (acc == 0) break;
    }
    return acc;
}

BigInt count_with_type(uint64_t q, const partitions::Partition& type) {
    const uint32_t maxpart = type.parts.empty() ? 1 : type.parts.front();
    PrimeCountSeq seq(q, maxpart);
    return count_with_type(seq, type);
}

BigRat inverse_prime_sum(uint64_t q, uint32_t d1, uint32_t d2) {
    if (d1 < 1 || d1 > d2)
        throw std::invalid_argument("inverse_prime_sum: need 1 <= d1 <= d2");
    BigInt num = 0;
    for (uint32_t e = d1; e <= d2; ++e)
        num += prime_poly_count(q, e) * pow_big(q, d2 - e);
    BigRat out(num, pow_big(q, d2));
    out.canonicalize();
    return out;
}

double tempered_prime_sum(uint64_t q, uint32_t d) {
    if (d == 0) throw std::invalid_argument("tempered_prime_sum: d must be >= 1");
    if (!is_prime_power(q))
        throw std::invalid_argument("tempered_prime_sum: q must be a prime power");
    const mpfr_prec_t prec = 192;
    realcmp::Real sum(prec), term(prec), qe(prec), expo(prec);
    mpfr_set_ui(sum.get(), 0, MPFR_RNDN);
    for (uint32_t e = 1; e <= d; ++e) {
        const BigInt pi_e = prime_poly_count(q, e);
        // |P|^{-(1-1/(d log q))} = q^{-e} * e^{e/d}  (since q^{1/log q} = e)
        mpfr_set_z(term.get(), pi_e.get_mpz_t(), MPFR_RNDN);
        mpfr_ui_pow_ui(qe.get(), static_cast<unsigned long>(q), e, MPFR_RNDN);
        mpfr_div(term.get(), term.get(), qe.get(), MPFR_RNDN);
        mpfr_set_ui(expo.get(), e, MPFR_RNDN);
        mpfr_div_ui(expo.get(), expo.get(), d, MPFR_RNDN);
        mpfr_exp(expo.get(), expo.get(), MPFR_RNDN);
        mpfr_mul(term.get(), term.get(), expo.get(), MPFR_RNDN);
        mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    }
    return mpfr_get_d(sum.get(), MPFR_RNDN);
}

uint32_t DegreeIntervals::boundary(uint32_t j) const {
    if (j == 0) return 0;
    if (j > intervals.size())
        throw std::invalid_argument("DegreeIntervals::boundary: index out of range");
    return intervals[j - 1].hi;
}

namespace {

// Exponent cap under which interval masses are also accumulated exactly.
constexpr uint32_t kExactCap = 2048;
constexpr uint32_t kBoundaryGuard = 50'000'000;

class IntervalBuilder {
public:
    explicit IntervalBuilder(uint64_t q) : q_(q) {}

    DegreeInterval build(uint32_t start) {
        for (mpfr_prec_t prec = 192; prec <= (1 << 16); prec *= 2) {
            DegreeInterval out;
            if (attempt(start, prec, out)) return out;
        }
        throw std::runtime_error("build_degree_intervals: boundary not certifiable");
    }

private:
    const BigInt& pi(uint32_t e) {
        auto it = cache_.find(e);
        if (it == cache_.end())
            it = cache_.emplace(e, prime_poly_count(q_, e)).first;
        return it->second;
    }

    // Certified enclosure of count(e)/q^e at the given precision.  Beyond the
    // exact cap falls back to the envelope |count(e) - q^e/e| <= 2 q^{e/2}/e,
    // widened to integer exponents.
    void term_bracket(uint32_t e, mpfr_prec_t prec, realcmp::Real& lo, realcmp::Real& hi) {
        realcmp::Real t(prec);
        if (e <= kExactCap) {
            const BigInt& p = pi(e);
            mpfr_set_z(lo.get(), p.get_mpz_t(), MPFR_RNDD);
            mpfr_ui_pow_ui(t.get(), static_cast<unsigned long>(q_), e, MPFR_RNDU);
            mpfr_div(lo.get(), lo.get(), t.get(), MPFR_RNDD);
            mpfr_set_z(hi.get(), p.get_mpz_t(), MPFR_RNDU);
            mpfr_ui_pow_ui(t.get(), static_cast<unsigned long>(q_), e, MPFR_RNDD);
            mpfr_div(hi.get(), hi.get(), t.get(), MPFR_RNDU);
        } else {
            // radius 2 q^{-floor(e/2)} / e >= 2 q^{-e/2} / e
            realcmp::Real rad(prec);
            mpfr_ui_pow_ui(t.get(), static_cast<unsigned long>(q_), e / 2, MPFR_RNDD);
            mpfr_ui_div(rad.get(), 2, t.get(), MPFR_RNDU);
            mpfr_div_ui(rad.get(), rad.get(), e, MPFR_RNDU);
            mpfr_set_ui(t.get(), 1, MPFR_RNDN);
            mpfr_div_ui(lo.get(), t.get(), e, MPFR_RNDD);
            mpfr_sub(lo.get(), lo.get(), rad.get(), MPFR_RNDD);
            mpfr_div_ui(hi.get(), t.get(), e, MPFR_RNDU);
            mpfr_add(hi.get(), hi.get(), rad.get(), MPFR_RNDU);
        }
    }

    // One full greedy pass at a fixed precision; false on an ambiguous
    // comparison (caller escalates).
    bool attempt(uint32_t start, mpfr_prec_t prec, DegreeInterval& out) {
        realcmp::Real log2lo(prec), log2hi(prec);
        mpfr_const_log2(log2lo.get(), MPFR_RNDD);
        mpfr_const_log2(log2hi.get(), MPFR_RNDU);
        realcmp::Real acc_lo(prec), acc_hi(prec), t_lo(prec), t_hi(prec);
        mpfr_set_ui(acc_lo.get(), 0, MPFR_RNDN);
        mpfr_set_ui(acc_hi.get(), 0, MPFR_RNDN);
        realcmp::Real try_lo(prec), try_hi(prec);

        out = DegreeInterval{};
        out.lo = start;
        BigRat exact_acc(0);
        bool exact_ok = true;

        for (uint32_t e = start;; ++e) {
            if (e - start > kBoundaryGuard)
                throw ResourceError("build_degree_intervals: interval too long");
            term_bracket(e, prec, t_lo, t_hi);
            mpfr_add(try_lo.get(), acc_lo.get(), t_lo.get(), MPFR_RNDD);
            mpfr_add(try_hi.get(), acc_hi.get(), t_hi.get(), MPFR_RNDU);
            if (e == start) {
                // first degree is always taken so the construction advances
                mpfr_swap(acc_lo.get(), try_lo.get());
                mpfr_swap(acc_hi.get(), try_hi.get());
                if (e <= kExactCap) add_exact(exact_acc, e); else exact_ok = false;
                if (mpfr_cmp(acc_lo.get(), log2hi.get()) > 0) {
                    out.overflow = true; // mass of this single degree > log 2
                    finish(out, e, exact_ok, exact_acc, acc_lo, acc_hi);
                    return true;
                }
                if (mpfr_cmp(acc_hi.get(), log2lo.get()) > 0)
                    return false; // ambiguous against log 2
                continue;
            }
            if (mpfr_cmp(try_hi.get(), log2lo.get()) <= 0) {
                // still certifiably <= log 2: extend
                mpfr_swap(acc_lo.get(), try_lo.get());
                mpfr_swap(acc_hi.get(), try_hi.get());
                if (e <= kExactCap && exact_ok) add_exact(exact_acc, e); else exact_ok = false;
                continue;
            }
            if (mpfr_cmp(try_lo.get(), log2hi.get()) > 0) {
                // adding e certifiably overshoots: interval ends at e-1
                finish(out, e - 1, exact_ok, exact_acc, acc_lo, acc_hi);
                return true;
            }
            return false; // ambiguous: escalate precision
        }
    }

    void add_exact(BigRat& acc, uint32_t e) {
        BigRat term(pi(e));
        term /= BigRat(pow_big(q_, e));
        acc += term;
    }

    void finish(DegreeInterval& out, uint32_t hi, bool exact_ok, const BigRat& exact_acc,
                const realcmp::Real& acc_lo, const realcmp::Real& acc_hi) {
        out.hi = hi;
        out.exact = exact_ok;
        if (exact_ok) out.exact_mass = exact_acc;
        out.mass_lo = mpfr_get_d(acc_lo.get(), MPFR_RNDD);
        out.mass_hi = mpfr_get_d(acc_hi.get(), MPFR_RNDU);
    }

    uint64_t q_;
    std::map<uint32_t, BigInt> cache_;
};

} // namespace

DegreeIntervals build_degree_intervals(uint64_t q, uint32_t interval_count) {
    if (!is_prime_power(q))
        throw std::invalid_argument("build_degree_intervals: q must be a prime power");
    DegreeIntervals out;
    out.q = q;
    IntervalBuilder builder(q);
    uint32_t start = 1;
    for (uint32_t j = 0; j < interval_count; ++j) {
        if (start > kBoundaryGuard)
            throw ResourceError("build_degree_intervals: boundary guard exceeded");
        DegreeInterval iv = builder.build(start);
        start = iv.hi + 1;
        out.intervals.push_back(std::move(iv));
    }
    return out;
}

} // namespace multab::primecount
