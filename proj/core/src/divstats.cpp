#include "multab/divstats.hpp"

#include "multab/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace multab::divstats {

DivisorClustering clustering_of_primes(
    const std::vector<std::pair<uint32_t, uint32_t>>& primes) {
    uint64_t deg = 0, tau = 1;
    for (const auto& [d, m] : primes) {
        deg += uint64_t(d) * m;
        tau *= m + 1;
        if (tau > (uint64_t(1) << 31))
            throw ResourceError("clustering: divisor count exceeds 2^31");
    }
    DivisorClustering out;
    out.tau_by_degree.assign(deg + 1, 0);
    out.tau_by_degree[0] = 1;
    // one factor 1 + u^d + ... + u^{m d} per distinct prime
    for (const auto& [d, m] : primes) {
        std::vector<uint64_t> next(deg + 1, 0);
        for (uint64_t t = 0; t <= deg; ++t) {
            if (out.tau_by_degree[t] == 0) continue;
            for (uint64_t e = 0; e <= m && t + e * d <= deg; ++e)
                next[t + e * d] += out.tau_by_degree[t];
        }
        out.tau_by_degree.swap(next);
    }
    out.degree_set = Bitset(deg + 1);
    for (uint64_t t = 0; t <= deg; ++t) {
        if (out.tau_by_degree[t] == 0) continue;
        out.degree_set.set(t);
        ++out.distinct_degrees;
        out.tau += out.tau_by_degree[t];
        out.equal_degree_pairs += out.tau_by_degree[t] * out.tau_by_degree[t];
    }
    return out;
}

DivisorClustering clustering(const gfpoly::Factorization& fact) {
    std::vector<std::pair<uint32_t, uint32_t>> primes;
    primes.reserve(fact.terms.size());
    for (const auto& t : fact.terms) primes.emplace_back(t.degree, t.multiplicity);
    return clustering_of_primes(primes);
}

DivisorClustering clustering_squarefree(const std::vector<uint32_t>& prime_degrees) {
    std::vector<std::pair<uint32_t, uint32_t>> primes;
    primes.reserve(prime_degrees.size());
    for (uint32_t d : prime_degrees) primes.emplace_back(d, 1u);
    return clustering_of_primes(primes);
}

LBoundReport check_l_bounds(const gfpoly::Factorization& fact) {
    const uint32_t omega = fact.distinct_primes();
    if (omega > 16)
        throw ResourceError("check_l_bounds: too many distinct primes");
    LBoundReport rep;
    const DivisorClustering full = clustering(fact);
    rep.l_value = full.distinct_degrees;
    rep.tau = full.tau;
    const uint64_t deg = fact.total_degree();

    auto fail = [&](std::string why) {
        rep.pass = false;
        if (rep.violation.empty()) rep.violation = std::move(why);
    };

    if (rep.l_value > rep.tau)
        fail("L > tau");
    if (rep.l_value > deg + 1)
        fail("L > deg + 1");

    // coprime splits: for each subset of primes as B (complement as A)
    std::vector<std::pair<uint32_t, uint32_t>> sub;
    for (uint32_t mask = 0; mask < (1u << omega); ++mask) {
        // L(A) for the complement of mask
        sub.clear();
        uint64_t tau_b = 1;
        for (uint32_t i = 0; i < omega; ++i) {
            if (mask & (1u << i))
                tau_b *= fact.terms[i].multiplicity + 1;
            else
                sub.emplace_back(fact.terms[i].degree, fact.terms[i].multiplicity);
        }
        const DivisorClustering part = clustering_of_primes(sub);
        if (uint64_t(rep.l_value) > tau_b * part.distinct_degrees) {
            fail("L(AB) > tau(B) L(A) at split mask " + std::to_string(mask));
            break;
        }
    }

    if (fact.squarefree() && omega > 0) {
        std::vector<uint32_t> degs;
        for (const auto& t : fact.terms) degs.push_back(t.degree);
        std::sort(degs.begin(), degs.end());
        uint64_t prefix = 0;
        for (uint32_t j = 1; j <= omega; ++j) {
            prefix += degs[j - 1];
            // 2^{k-j} (prefix + 1)
            const uint64_t bound = (prefix + 1) << (omega - j);
            if (rep.l_value > bound) {
                fail("L > 2^{k-j}(deg prefix + 1) at j = " + std::to_string(j));
                break;
            }
        }
    }
    return rep;
}

namespace {

// Enumerates prime-degree multisets (as partitions, parts <= max_prime_degree)
// of every total in [min_total, max_total], including the empty multiset when
// min_total == 0.
template <class Fn>
void for_each_degree_multiset(const SquarefreeSumConstraints& c, Fn&& fn) {
    if (c.min_total_degree == 0) {
        partitions::Partition empty;
        if (!c.prime_count || *c.prime_count == 0) fn(empty);
    }
    for (uint32_t t = std::max(c.min_total_degree, 1u); t <= c.max_total_degree; ++t) {
        partitions::for_each_partition_max_part(t, c.max_prime_degree,
            [&](const partitions::Partition& lam) {
                if (c.prime_count && lam.parts.size() != *c.prime_count) return;
                fn(lam);
            });
    }
}

// prod_e C(count(e), m_e) for a squarefree degree multiset.
BigInt squarefree_type_count(const primecount::PrimeCountSeq& seq,
                             const partitions::Partition& lam) {
    BigInt acc = 1;
    for (const auto& [d, m] : lam.multiplicities()) {
        acc *= binomial(seq.count(d), m);
        if (acc == 0) break;
    }
    return acc;
}

} // namespace

WeightedSums sum_lwt_squarefree(const primecount::PrimeCountSeq& seq,
                                const SquarefreeSumConstraints& c) {
    if (c.max_prime_degree == 0 || c.max_prime_degree > seq.max_degree())
        throw std::invalid_argument("sum_lwt_squarefree: bad max_prime_degree");
    WeightedSums out{BigRat(0), BigRat(0), BigRat(0)};
    for_each_degree_multiset(c, [&](const partitions::Partition& lam) {
        const BigInt ways = squarefree_type_count(seq, lam);
        if (ways == 0) return;
        const DivisorClustering cl = clustering_squarefree(lam.parts);
        BigRat w(ways, pow_big(seq.q(), lam.sum()));
        w.canonicalize();
        out.l_sum += BigRat(static_cast<unsigned long>(cl.distinct_degrees)) * w;
        out.w_sum += BigRat(static_cast<unsigned long>(cl.equal_degree_pairs)) * w;
        out.tau_sum += BigRat(static_cast<unsigned long>(cl.tau)) * w;
    });
    return out;
}

BigRat truncated_s(const primecount::PrimeCountSeq& seq, uint32_t d,
                   uint32_t max_total_degree) {
    if (d == 0 || d > seq.max_degree())
        throw std::invalid_argument("truncated_s: bad d");
    BigRat acc(0);
    SquarefreeSumConstraints c;
    c.max_total_degree = max_total_degree;
    c.max_prime_degree = d;
    for_each_degree_multiset(c, [&](const partitions::Partition& lam) {
        const uint64_t t = lam.sum();
        const uint32_t pmax = lam.parts.empty() ? 0 : lam.parts.front();
        const int64_t gap = int64_t(d) + pmax - int64_t(t);
        if (gap == 0) return; // excluded pole terms
        const BigInt ways = squarefree_type_count(seq, lam);
        if (ways == 0) return;
        const DivisorClustering cl = clustering_squarefree(lam.parts);
        BigRat term(ways * static_cast<unsigned long>(cl.distinct_degrees),
                    pow_big(seq.q(), t) * static_cast<unsigned long>(gap * gap));
        term.canonicalize();
        acc += term;
    });
    return acc;
}

namespace {

BigRat pow2_rat(int64_t e) {
    if (e >= 0) return BigRat(pow_big(2, static_cast<uint64_t>(e)));
    BigRat r(1, 1);
    r /= BigRat(pow_big(2, static_cast<uint64_t>(-e)));
    return r;
}

} // namespace

LowerBoundFamily build_lower_bound_family(uint64_t q, uint64_t b, uint32_t m_param) {
    if (b < 2) throw std::invalid_argument("build_lower_bound_family: b must be >= 2");
    const uint32_t log2b = 63 - static_cast<uint32_t>(std::countl_zero(b));
    if (log2b < 2 * m_param + 1)
        throw std::invalid_argument("build_lower_bound_family: k = floor(log2 b) - 2M < 1");
    LowerBoundFamily out;
    out.m_param = m_param;
    out.k = log2b - 2 * m_param;
    out.j_count = m_param + out.k - 1;
    const uint32_t M = m_param, J = out.j_count;

    const auto intervals = primecount::build_degree_intervals(q, J);
    for (uint32_t j = 1; j <= J; ++j) out.boundaries.push_back(intervals.boundary(j));

    // coordinate ranges for j = M+1 .. J
    std::vector<uint64_t> caps;
    uint64_t size = 1;
    for (uint32_t j = M + 1; j <= J; ++j) {
        const uint64_t cap = std::min<uint64_t>(uint64_t(M) * j, uint64_t(M) * (J - j + 1));
        caps.push_back(cap);
        if (size > 2'000'000 / (cap + 1) + 1)
            throw ResourceError("build_lower_bound_family: family too large");
        size *= cap + 1;
    }
    out.family_size = size;

    // Write f(b) = 2^{M-1-J} g(b) with the integer
    //   g(b) = sum_{h=M}^{J} 2^{J-h+S_h},  S_h = sum of coordinates up to h,
    // so each weight is 1/(prod b_j! * f) = 2^{J+1-M} / (prod b_j! * g).
    uint64_t cap_total = 0;
    for (uint64_t c : caps) cap_total += c;
    std::vector<BigInt> pow2;
    for (uint64_t e = 0; e <= J + cap_total; ++e) pow2.push_back(pow_big(2, e));
    const BigInt scale = pow_big(2, uint64_t(J) + 1 - M);

    std::vector<uint64_t> vec(caps.size(), 0);
    // Binary-counter stack of partial sums: slot i holds a sum of 2^i terms,
    // keeping rational additions between operands of comparable size.
    std::vector<BigRat> partial;
    uint64_t terms = 0;
    BigInt min_g(-1);
    out.degree_cap_ok = true;
    for (;;) {
        BigInt g(0);
        uint64_t s = 0;
        for (uint32_t h = M; h <= J; ++h) {
            if (h > M) s += vec[h - M - 1];
            g += pow2[J - h + s];
        }
        if (min_g < 0 || g < min_g) min_g = g;

        BigInt bfact = 1; // prod b_j!
        uint64_t cap_sum = 0;
        for (size_t i = 0; i < vec.size(); ++i) {
            bfact *= factorial(vec[i]);
            cap_sum += vec[i] * out.boundaries[M + i]; // boundary of interval M+1+i
        }
        if (cap_sum * 8 > b) out.degree_cap_ok = false;
        BigRat w(scale, bfact * g);
        w.canonicalize();
        ++terms;
        for (uint64_t bit = terms; (bit & 1) == 0; bit >>= 1) {
            w += partial.back();
            partial.pop_back();
        }
        partial.push_back(std::move(w));

        // odometer over the coordinate box
        size_t i = 0;
        while (i < vec.size() && vec[i] == caps[i]) { vec[i] = 0; ++i; }
        if (i == vec.size()) break;
        ++vec[i];
    }
    out.weight_sum = BigRat(0);
    for (auto& p : partial) out.weight_sum += p;
    out.min_f = BigRat(min_g) * pow2_rat(int64_t(M) - 1 - int64_t(J));

    if (out.k >= 1) {
        BigRat stirling(pow_big(out.k, out.k >= 1 ? out.k - 1 : 0), factorial(out.k));
        stirling.canonicalize();
        out.ratio_vs_stirling = to_double(out.weight_sum / stirling);
        out.ratio_vs_k32 = to_double(out.weight_sum) * std::pow(double(out.k), 1.5);
    }
    return out;
}

} // namespace multab::divstats
