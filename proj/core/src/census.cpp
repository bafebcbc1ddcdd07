#include "multab/census.hpp"

#include "multab/errors.hpp"
#include "multab/realcmp.hpp"

#include <mpfr.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace multab::census {

using partitions::Partition;

double AsymptoticParams::delta() {
    static const double value = [] {
        realcmp::Real t(256);
        mpfr_const_log2(t.get(), MPFR_RNDN);       // log 2
        realcmp::Real l(256);
        mpfr_log(l.get(), t.get(), MPFR_RNDN);     // log log 2
        mpfr_add_ui(l.get(), l.get(), 1, MPFR_RNDN);
        mpfr_div(l.get(), l.get(), t.get(), MPFR_RNDN);
        mpfr_ui_sub(l.get(), 1, l.get(), MPFR_RNDN);
        return mpfr_get_d(l.get(), MPFR_RNDN);
    }();
    return value;
}

std::string AsymptoticParams::delta_decimal(int places) {
    realcmp::Real t(256), l(256);
    mpfr_const_log2(t.get(), MPFR_RNDN);
    mpfr_log(l.get(), t.get(), MPFR_RNDN);
    mpfr_add_ui(l.get(), l.get(), 1, MPFR_RNDN);
    mpfr_div(l.get(), l.get(), t.get(), MPFR_RNDN);
    mpfr_ui_sub(l.get(), 1, l.get(), MPFR_RNDN);
    char buf[64];
    mpfr_snprintf(buf, sizeof buf, "%.*Rf", places, l.get());
    return buf;
}

namespace {

// log of the predicted density b^{-delta} (log b)^{-3/2}; NaN for b < 2.
double log_predicted_density(uint64_t b) {
    if (b < 2) return std::numeric_limits<double>::quiet_NaN();
    const double lb = std::log(static_cast<double>(b));
    return -AsymptoticParams::delta() * lb -
           AsymptoticParams::log_exponent * std::log(lb);
}

} // namespace

double predicted_density(uint64_t b) { return std::exp(log_predicted_density(b)); }

namespace {

CountReport make_report(std::string kind, uint64_t q, uint64_t n, uint64_t b,
                        BigInt count, const BigInt& total, double log_total) {
    CountReport r;
    r.kind = std::move(kind);
    r.q = q;
    r.n = n;
    r.b = b;
    r.count = std::move(count);
    BigRat dens(r.count);
    dens /= BigRat(total);
    r.density = to_double(dens);
    const double lpd = log_predicted_density(b);
    r.predicted = std::exp(log_total + lpd);
    r.ratio = r.density * std::exp(-lpd);
    return r;
}

std::string csv_field(double x) {
    if (std::isnan(x)) return "nan";
    return format_g15(x);
}

} // namespace

std::string CountReport::csv_header() {
    return "kind,q,n,b,count,density,predicted,ratio";
}

std::string CountReport::csv_row() const {
    std::string s = kind;
    s += ',';
    if (q != 0) s += std::to_string(q);
    s += ',' + std::to_string(n) + ',' + std::to_string(b);
    s += ',' + count.get_str();
    s += ',' + format_g15(density);
    s += ',' + csv_field(predicted);
    s += ',';
    if (!std::isnan(ratio)) s += format_g15(ratio);
    return s;
}

nlohmann::ordered_json CountReport::json_row() const {
    nlohmann::ordered_json j;
    j["kind"] = kind;
    if (q != 0) j["q"] = q; else j["q"] = nullptr;
    j["n"] = n;
    j["b"] = b;
    j["count"] = count.get_str();
    j["density"] = density;
    j["predicted"] = std::isnan(predicted) ? nlohmann::ordered_json(nullptr)
                                           : nlohmann::ordered_json(predicted);
    j["ratio"] = std::isnan(ratio) ? nlohmann::ordered_json(nullptr)
                                   : nlohmann::ordered_json(ratio);
    return j;
}

namespace {

// Sum weight(lambda) over partitions lambda of n whose subset sums reach b,
// for every b in bs at once.  Sharded by largest part for threading; exact
// integer accumulation makes the result independent of the schedule.
template <class Weight>
std::vector<BigInt> sum_over_types(uint32_t n, const std::vector<uint32_t>& bs,
                                   unsigned threads, Weight weight) {
    for (uint32_t b : bs)
        if (b > n) throw std::invalid_argument("census: b exceeds n");
    std::vector<BigInt> out(bs.size(), BigInt(0));
    if (n == 0) {
        Partition empty;
        const BigInt w = weight(empty);
        for (size_t i = 0; i < bs.size(); ++i) out[i] = w; // only b = 0 possible
        return out;
    }

    auto run_shard = [&](uint32_t first, std::vector<BigInt>& acc) {
        partitions::for_each_partition_first_part(n, first, [&](const Partition& lam) {
            const auto prof = partitions::subset_sum_profile(lam);
            BigInt w;
            bool have_w = false;
            for (size_t i = 0; i < bs.size(); ++i) {
                if (!prof.reachable.test(bs[i])) continue;
                if (!have_w) { w = weight(lam); have_w = true; }
                acc[i] += w;
            }
        });
    };

    if (threads <= 1) {
        for (uint32_t first = 1; first <= n; ++first) run_shard(first, out);
        return out;
    }

    std::vector<std::vector<BigInt>> shard_acc(n + 1);
    for (auto& v : shard_acc) v.assign(bs.size(), BigInt(0));
    std::atomic<uint32_t> next{1};
    auto worker = [&] {
        for (;;) {
            const uint32_t first = next.fetch_add(1);
            if (first > n) return;
            run_shard(first, shard_acc[first]);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (uint32_t first = 1; first <= n; ++first)
        for (size_t i = 0; i < bs.size(); ++i) out[i] += shard_acc[first][i];
    return out;
}

void check_cap(uint32_t n, const CensusOptions& opts) {
    if (n > opts.partition_cap)
        throw ResourceError("census: n exceeds partition cap " +
                            std::to_string(opts.partition_cap));
}

} // namespace

std::vector<BigInt> count_h_many(uint64_t q, uint32_t n, const std::vector<uint32_t>& bs,
                                 const CensusOptions& opts) {
    check_cap(n, opts);
    primecount::PrimeCountSeq seq(q, std::max(n, 1u));
    return sum_over_types(n, bs, opts.threads, [&](const Partition& lam) {
        return primecount::count_with_type(seq, lam);
    });
}

std::vector<BigInt> count_t_many(uint32_t n, const std::vector<uint32_t>& bs,
                                 const CensusOptions& opts) {
    check_cap(n, opts);
    const BigInt nfact = factorial(n);
    return sum_over_types(n, bs, opts.threads, [&](const Partition& lam) {
        BigInt z = partitions::centralizer_order(lam);
        BigInt w;
        mpz_divexact(w.get_mpz_t(), nfact.get_mpz_t(), z.get_mpz_t());
        return w;
    });
}

std::vector<CountReport> count_h_reports(uint64_t q, uint32_t n,
                                         const std::vector<uint32_t>& bs,
                                         const CensusOptions& opts) {
    auto counts = count_h_many(q, n, bs, opts);
    const BigInt total = pow_big(q, n);
    const double log_total = n * std::log(static_cast<double>(q));
    std::vector<CountReport> out;
    out.reserve(bs.size());
    for (size_t i = 0; i < bs.size(); ++i)
        out.push_back(make_report("H", q, n, bs[i], std::move(counts[i]), total,
                                  log_total));
    return out;
}

std::vector<CountReport> count_t_reports(uint32_t n, const std::vector<uint32_t>& bs,
                                         const CensusOptions& opts) {
    auto counts = count_t_many(n, bs, opts);
    const BigInt total = factorial(n);
    const double log_total = std::lgamma(static_cast<double>(n) + 1.0);
    std::vector<CountReport> out;
    out.reserve(bs.size());
    for (size_t i = 0; i < bs.size(); ++i)
        out.push_back(make_report("T", 0, n, bs[i], std::move(counts[i]), total,
                                  log_total));
    return out;
}

CountReport count_h(uint64_t q, uint32_t n, uint32_t b, const CensusOptions& opts) {
    return count_h_reports(q, n, {b}, opts)[0];
}

CountReport count_t(uint32_t n, uint32_t b, const CensusOptions& opts) {
    return count_t_reports(n, {b}, opts)[0];
}

CountReport count_m(uint64_t q, uint32_t two_n, const CensusOptions& opts) {
    if (two_n % 2 != 0)
        throw std::invalid_argument("count_m: degree must be even");
    auto counts = count_h_many(q, two_n, {two_n / 2}, opts);
    CountReport r = make_report("M", q, two_n, two_n / 2, std::move(counts[0]),
                                pow_big(q, two_n),
                                two_n * std::log(static_cast<double>(q)));
    return r;
}

BigInt count_hstar(uint64_t q, uint32_t n, uint32_t b, const CensusOptions& opts) {
    check_cap(n, opts);
    primecount::PrimeCountSeq seq(q, std::max(n, 1u));
    auto counts = sum_over_types(n, {b}, opts.threads, [&](const Partition& lam) {
        BigInt acc = 1;
        for (const auto& [d, m] : lam.multiplicities()) {
            acc *= binomial(seq.count(d), m); // distinct primes: squarefree
            if (acc == 0) break;
        }
        return acc;
    });
    return counts[0];
}

// --- brute-force scans -----------------------------------------------------

namespace {

// Calls fn once per monic degree-n F with its full factorization
// (degree, rank, multiplicity) terms, primes ascending.  Allocation-free per
// iteration.
template <class Fn>
void scan_factorizations(const gfpoly::SpfTable& table, uint32_t n, Fn&& fn) {
    const uint32_t p = table.p();
    if (n == 0) {
        fn(std::vector<gfpoly::Factorization::Term>{});
        return;
    }
    if (n > table.max_degree())
        throw std::invalid_argument("scan: degree exceeds table");
    std::vector<uint64_t> pw(n + 1, 1);
    for (uint32_t i = 1; i <= n; ++i) pw[i] = pw[i - 1] * p;

    std::vector<uint32_t> digits(n, 0);          // coefficients of F below x^n
    std::vector<uint32_t> work(n + 1), quot(n + 1), prime(n + 1);
    std::vector<gfpoly::Factorization::Term> terms;
    const uint64_t total = pw[n];

    for (uint64_t f_rank = 0;; ++f_rank) {
        work.assign(digits.begin(), digits.end());
        work.push_back(1);
        terms.clear();
        uint32_t deg = n;
        uint64_t rank = f_rank;
        while (deg > 0) {
            const uint32_t idx = table.spf_index(deg, rank);
            const uint32_t pd = table.prime_degree(idx);
            uint64_t pr = table.prime_rank(idx);
            if (!terms.empty() && terms.back().degree == pd && terms.back().rank == pr) {
                ++terms.back().multiplicity;
            } else {
                terms.push_back({pd, pr, 1});
            }
            // divide work (monic, degree deg) by the prime, in place
            const uint64_t saved_pr = pr;
            for (uint32_t i = 0; i < pd; ++i) { prime[i] = pr % p; pr /= p; }
            prime[pd] = 1;
            const uint32_t qdeg = deg - pd;
            for (uint32_t i = qdeg + 1; i-- > 0;) {
                const uint64_t c = work[i + pd];
                quot[i] = static_cast<uint32_t>(c);
                if (c == 0) continue;
                for (uint32_t j = 0; j < pd; ++j) { // leading prime coeff handled by quot
                    const uint64_t v = work[i + j] + (p - prime[j]) * c;
                    work[i + j] = static_cast<uint32_t>(v % p);
                }
                work[i + pd] = 0;
            }
            work.swap(quot);
            deg = qdeg;
            rank = 0;
            for (uint32_t i = deg; i-- > 0;) rank = rank * p + work[i];
            (void)saved_pr;
        }
        fn(std::as_const(terms));
        if (f_rank + 1 == total) break;
        for (uint32_t i = 0;; ++i) { // base-p odometer
            if (++digits[i] < p) break;
            digits[i] = 0;
        }
    }
}

uint64_t table_entries_needed(uint32_t p, uint32_t n) {
    uint64_t total = 0, pw = 1;
    for (uint32_t i = 0; i <= n; ++i) {
        total += pw;
        if (i < n) {
            if (pw > UINT64_MAX / p) return UINT64_MAX;
            pw *= p;
        }
    }
    return total;
}

} // namespace

std::vector<std::pair<Partition, uint64_t>>
brute_type_census(const gfpoly::SpfTable& table, uint32_t n) {
    const auto all = partitions::all_partitions(n);
    std::map<std::vector<uint32_t>, size_t> index;
    for (size_t i = 0; i < all.size(); ++i) index[all[i].parts] = i;
    std::vector<uint64_t> hist(all.size(), 0);
    std::vector<uint32_t> parts;
    scan_factorizations(table, n, [&](const auto& terms) {
        parts.clear();
        for (const auto& t : terms)
            for (uint32_t i = 0; i < t.multiplicity; ++i) parts.push_back(t.degree);
        std::sort(parts.rbegin(), parts.rend());
        ++hist[index.at(parts)];
    });
    std::vector<std::pair<Partition, uint64_t>> out;
    out.reserve(all.size());
    for (size_t i = 0; i < all.size(); ++i) out.emplace_back(all[i], hist[i]);
    return out;
}

std::vector<BigInt> brute_h_all(const gfpoly::SpfTable& table, uint32_t n) {
    std::vector<BigInt> out(n + 1, BigInt(0));
    for (const auto& [type, cnt] : brute_type_census(table, n)) {
        if (cnt == 0) continue;
        const auto prof = partitions::subset_sum_profile(type);
        for (uint32_t b = 0; b <= n; ++b)
            if (prof.reachable.test(b)) out[b] += cnt;
    }
    return out;
}

BigInt brute_h_products(uint32_t p, uint32_t n, uint32_t b) {
    if (b > n) throw std::invalid_argument("brute_h_products: b > n");
    uint64_t bits = 1;
    for (uint32_t i = 0; i < n; ++i) {
        bits *= p;
        if (bits > (uint64_t(1) << 35))
            throw ResourceError("brute_h_products: bitmap exceeds 2^35 bits");
    }
    std::vector<uint64_t> seen((bits + 63) / 64, 0);
    uint64_t g_count = 1;
    for (uint32_t i = 0; i < b; ++i) g_count *= p;
    for (uint64_t g = 0; g < g_count; ++g) {
        const gfpoly::MonicPoly G = gfpoly::unrank(p, b, g);
        gfpoly::ProductScanner scan(G, n - b);
        do {
            const uint64_t r = scan.product_rank();
            seen[r >> 6] |= uint64_t(1) << (r & 63);
        } while (scan.next());
    }
    uint64_t total = 0;
    for (uint64_t w : seen) total += static_cast<uint64_t>(__builtin_popcountll(w));
    return BigInt(static_cast<unsigned long>(total));
}

BigInt brute_h(uint32_t p, uint32_t n, uint32_t b, uint64_t budget) {
    if (b > n) throw std::invalid_argument("brute_h: b > n");
    if (table_entries_needed(p, n) <= budget) {
        gfpoly::SpfTable table(p, n, budget);
        return brute_h_all(table, n)[b];
    }
    return brute_h_products(p, n, b);
}

std::vector<BigInt> brute_t_all(uint32_t n) {
    BigInt perms = factorial(n);
    if (perms > 50'000'000)
        throw ResourceError("brute_t_all: n! too large for exhaustive scan");
    const auto all = partitions::all_partitions(n);
    std::map<std::vector<uint32_t>, size_t> index;
    for (size_t i = 0; i < all.size(); ++i) index[all[i].parts] = i;
    std::vector<uint64_t> hist(all.size(), 0);

    std::vector<uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    std::vector<bool> visited(n);
    std::vector<uint32_t> parts;
    do {
        std::fill(visited.begin(), visited.end(), false);
        parts.clear();
        for (uint32_t i = 0; i < n; ++i) {
            if (visited[i]) continue;
            uint32_t len = 0, j = i;
            while (!visited[j]) { visited[j] = true; j = perm[j]; ++len; }
            parts.push_back(len);
        }
        std::sort(parts.rbegin(), parts.rend());
        ++hist[index.at(parts)];
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<BigInt> out(n + 1, BigInt(0));
    for (size_t i = 0; i < all.size(); ++i) {
        if (hist[i] == 0) continue;
        const auto prof = partitions::subset_sum_profile(all[i]);
        for (uint32_t b = 0; b <= n; ++b)
            if (prof.reachable.test(b)) out[b] += hist[i];
    }
    return out;
}

BigInt brute_t(uint32_t n, uint32_t b) {
    if (b > n) throw std::invalid_argument("brute_t: b > n");
    return brute_t_all(n)[b];
}

// --- rough and squarefull censuses ------------------------------------------------------

BigInt count_rough(uint64_t q, uint32_t n, uint32_t d) {
    if (d < 1) throw std::invalid_argument("count_rough: d must be >= 1");
    // coefficient of u^n in prod_{e >= d} (1 - u^e)^{-count(e)}
    std::vector<BigInt> f(n + 1, BigInt(0));
    f[0] = 1;
    for (uint32_t e = d; e <= n; ++e) {
        const BigInt pi_e = primecount::prime_poly_count(q, e);
        std::vector<BigInt> mc(n / e + 1);
        for (uint32_t j = 0; j <= n / e; ++j) mc[j] = multichoose(pi_e, j);
        std::vector<BigInt> g(n + 1, BigInt(0));
        for (uint32_t t = 0; t <= n; ++t) {
            if (f[t] == 0) continue;
            for (uint32_t j = 0; t + j * e <= n; ++j) g[t + j * e] += f[t] * mc[j];
        }
        f.swap(g);
    }
    return f[n];
}

std::vector<BigInt> brute_rough_all(const gfpoly::SpfTable& table, uint32_t n) {
    // hist[d] = #F whose smallest prime degree is exactly d (n+1 for F = 1)
    std::vector<uint64_t> hist(n + 2, 0);
    scan_factorizations(table, n, [&](const auto& terms) {
        ++hist[terms.empty() ? n + 1 : terms.front().degree];
    });
    std::vector<BigInt> out(n + 1, BigInt(0));
    for (uint32_t d = n; d >= 1; --d) {
        out[d] = (d == n ? BigInt(0) : out[d + 1]) + hist[d];
        if (d == 1) break;
    }
    if (n >= 1) out[0] = out[1];
    return out;
}

BigInt count_squarefull(uint64_t q, uint32_t n) {
    // a_k = q a_{k-2} + q a_{k-3} - q^2 a_{k-5} + [k=0] - q [k=6]
    std::vector<BigInt> a(n + 1, BigInt(0));
    const BigInt Q(static_cast<unsigned long>(q));
    for (uint32_t k = 0; k <= n; ++k) {
        BigInt v = 0;
        if (k >= 2) v += Q * a[k - 2];
        if (k >= 3) v += Q * a[k - 3];
        if (k >= 5) v -= Q * Q * a[k - 5];
        if (k == 0) v += 1;
        if (k == 6) v -= Q;
        a[k] = v;
    }
    return a[n];
}

BigInt brute_squarefull(const gfpoly::SpfTable& table, uint32_t n) {
    uint64_t cnt = 0;
    scan_factorizations(table, n, [&](const auto& terms) {
        for (const auto& t : terms)
            if (t.multiplicity < 2) return;
        ++cnt;
    });
    return BigInt(static_cast<unsigned long>(cnt));
}

BigRat squarefull_tail_upper(uint64_t q, uint32_t min_degree) {
    const uint32_t N = min_degree + 80;
    BigInt num = 0;
    {
        // exact sum of a_n / q^n for min_degree <= n <= N over denominator q^N
        std::vector<BigInt> a(N + 1, BigInt(0));
        const BigInt Q(static_cast<unsigned long>(q));
        for (uint32_t k = 0; k <= N; ++k) {
            BigInt v = 0;
            if (k >= 2) v += Q * a[k - 2];
            if (k >= 3) v += Q * a[k - 3];
            if (k >= 5) v -= Q * Q * a[k - 5];
            if (k == 0) v += 1;
            if (k == 6) v -= Q;
            a[k] = v;
        }
        for (uint32_t n = min_degree; n <= N; ++n)
            num += a[n] * pow_big(q, N - n);
    }
    BigRat out(num, pow_big(q, N));
    out.canonicalize();
    // remainder over n > N: a_n <= (n+1) q^{n/2}, so
    //   sum_{n > N} a_n q^{-n} <= sum_{m >= m0} (4m+3) q^{-m},  m0 = floor((N+1)/2)
    const uint64_t m0 = (N + 1) / 2;
    BigRat x(1, static_cast<unsigned long>(q));
    BigRat one_minus_x = BigRat(1) - x;
    BigRat xm0(1);
    for (uint64_t i = 0; i < m0; ++i) xm0 *= x;
    BigRat sum_geo = xm0 / one_minus_x;
    BigRat sum_m = xm0 * (BigRat(static_cast<unsigned long>(m0)) * one_minus_x + x) /
                   (one_minus_x * one_minus_x);
    out += 4 * sum_m + 3 * sum_geo;
    return out;
}

BigRat squarefull_tau_sum(uint64_t q, uint32_t max_degree) {
    // coefficient DP for prod_d ( sum_j C(count(d), j) s_d(u)^j ),
    // s_d(u) = sum_{m >= 2} (m+1) u^{m d}
    const uint32_t N = max_degree;
    std::vector<BigInt> acc(N + 1, BigInt(0));
    acc[0] = 1;
    for (uint32_t d = 1; 2 * d <= N; ++d) {
        const BigInt pi_d = primecount::prime_poly_count(q, d);
        std::vector<BigInt> s(N + 1, BigInt(0));
        for (uint32_t m = 2; m * d <= N; ++m) s[m * d] = m + 1;
        // factor = sum_j C(pi_d, j) s^j, truncated
        std::vector<BigInt> factor(N + 1, BigInt(0)), sj(N + 1, BigInt(0));
        factor[0] = 1;
        sj[0] = 1;
        for (uint32_t j = 1; 2 * d * j <= N; ++j) {
            std::vector<BigInt> nsj(N + 1, BigInt(0));
            for (uint32_t t = 0; t <= N; ++t) {
                if (sj[t] == 0) continue;
                for (uint32_t u = 2 * d; t + u <= N; u += d) nsj[t + u] += sj[t] * s[u];
            }
            sj.swap(nsj);
            const BigInt c = binomial(pi_d, j);
            for (uint32_t t = 0; t <= N; ++t)
                if (sj[t] != 0) factor[t] += c * sj[t];
        }
        std::vector<BigInt> nacc(N + 1, BigInt(0));
        for (uint32_t t = 0; t <= N; ++t) {
            if (acc[t] == 0) continue;
            for (uint32_t u = 0; t + u <= N; ++u)
                if (factor[u] != 0) nacc[t + u] += acc[t] * factor[u];
        }
        acc.swap(nacc);
    }
    BigInt num = 0;
    for (uint32_t t = 0; t <= N; ++t) num += acc[t] * pow_big(q, N - t);
    BigRat out(num, pow_big(q, N));
    out.canonicalize();
    return out;
}

TypeDiscrepancy type_discrepancy(uint64_t q, uint32_t n) {
    if (n < 1) throw std::invalid_argument("type_discrepancy: n must be >= 1");
    primecount::PrimeCountSeq seq(q, n);
    const BigInt qn = pow_big(q, n);
    const BigInt qn1 = pow_big(q, n - 1);
    TypeDiscrepancy best;
    best.value = BigRat(-1);
    partitions::for_each_partition(n, [&](const Partition& lam) {
        const BigInt cnt = primecount::count_with_type(seq, lam);
        const BigInt z = partitions::centralizer_order(lam);
        BigInt diff = cnt * z - qn;
        if (sgn(diff) < 0) diff = -diff;
        BigRat val(diff, z * qn1);
        val.canonicalize();
        if (val > best.value) {
            best.value = val;
            best.argmax = lam;
        }
    });
    return best;
}

} // namespace multab::census
