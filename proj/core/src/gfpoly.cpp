#include "multab/gfpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace multab::gfpoly {

namespace {

void require_same_field(const MonicPoly& a, const MonicPoly& b) {
    if (a.p != b.p) throw std::invalid_argument("polynomials over different fields");
}

// 63-bit safety for rank arithmetic.
void require_rank_fits(uint32_t p, uint32_t n) {
    uint64_t v = 1;
    for (uint32_t i = 0; i < n; ++i) {
        if (v > (uint64_t(1) << 62) / p)
            throw ResourceError("p^n exceeds 63-bit rank space");
        v *= p;
    }
}

// Full coefficient vector including the leading 1.
std::vector<uint32_t> full_coeffs(const MonicPoly& f) {
    std::vector<uint32_t> c(f.coeffs);
    c.push_back(1);
    return c;
}

} // namespace

std::string MonicPoly::to_string() const {
    if (degree() == 0) return "1";
    std::string s;
    auto term = [&](uint32_t c, uint32_t e) {
        if (c == 0) return;
        if (!s.empty()) s += '+';
        if (e == 0) { s += std::to_string(c); return; }
        if (c != 1) s += std::to_string(c);
        s += 'x';
        if (e > 1) { s += '^'; s += std::to_string(e); }
    };
    term(1, degree());
    for (uint32_t i = degree(); i-- > 0;) term(coeffs[i], i);
    return s;
}

MonicPoly one(uint32_t p) { return MonicPoly{p, {}}; }

uint64_t rank_of(const MonicPoly& f) {
    require_rank_fits(f.p, f.degree());
    uint64_t r = 0;
    for (uint32_t i = f.degree(); i-- > 0;) r = r * f.p + f.coeffs[i];
    return r;
}

MonicPoly unrank(uint32_t p, uint32_t n, uint64_t rank) {
    require_rank_fits(p, n);
    MonicPoly f;
    f.p = p;
    f.coeffs.resize(n);
    for (uint32_t i = 0; i < n; ++i) {
        f.coeffs[i] = static_cast<uint32_t>(rank % p);
        rank /= p;
    }
    if (rank != 0) throw std::invalid_argument("rank out of range for degree");
    return f;
}

MonicPoly poly_mul(const MonicPoly& a, const MonicPoly& b) {
    require_same_field(a, b);
    const uint64_t p = a.p;
    const auto fa = full_coeffs(a), fb = full_coeffs(b);
    std::vector<uint64_t> acc(a.degree() + b.degree() + 1, 0);
    for (size_t i = 0; i < fa.size(); ++i) {
        if (fa[i] == 0) continue;
        for (size_t j = 0; j < fb.size(); ++j)
            acc[i + j] = (acc[i + j] + uint64_t(fa[i]) * fb[j]) % p;
    }
    MonicPoly out;
    out.p = a.p;
    out.coeffs.assign(acc.begin(), acc.end() - 1);
    return out;
}

bool poly_divides(const MonicPoly& f, const MonicPoly& d, MonicPoly* quot) {
    require_same_field(f, d);
    if (d.degree() > f.degree()) return false;
    const uint64_t p = f.p;
    std::vector<uint32_t> rem = full_coeffs(f);
    const auto fd = full_coeffs(d);
    const uint32_t m = d.degree();
    const uint32_t qdeg = f.degree() - m;
    std::vector<uint32_t> q(qdeg + 1, 0);
    for (uint32_t i = qdeg + 1; i-- > 0;) {
        const uint64_t c = rem[i + m];
        q[i] = static_cast<uint32_t>(c);
        if (c == 0) continue;
        for (uint32_t j = 0; j <= m; ++j) { // rem -= c * d[j] * x^{i+j} mod p
            const uint64_t v = rem[i + j] + (p - fd[j]) * c;
            rem[i + j] = static_cast<uint32_t>(v % p);
        }
    }
    for (uint32_t j = 0; j < m; ++j)
        if (rem[j] != 0) return false;
    if (quot) {
        quot->p = f.p;
        quot->coeffs.assign(q.begin(), q.end() - 1);
    }
    return true;
}

MonicPoly poly_divexact(const MonicPoly& f, const MonicPoly& d) {
    MonicPoly q;
    if (!poly_divides(f, d, &q))
        throw std::invalid_argument("poly_divexact: division not exact");
    return q;
}

bool is_irreducible(const MonicPoly& f, uint64_t budget) {
    const uint32_t n = f.degree();
    if (n == 0) return false; // the unit
    if (n == 1) return true;
    uint64_t trial_count = 0, pw = 1;
    for (uint32_t d = 1; d <= n / 2; ++d) {
        pw *= f.p;
        trial_count += pw;
    }
    if (trial_count > budget)
        throw ResourceError("is_irreducible: trial-division budget exceeded");
    for (uint32_t d = 1; d <= n / 2; ++d) {
        uint64_t count = 1;
        for (uint32_t i = 0; i < d; ++i) count *= f.p;
        for (uint64_t k = 0; k < count; ++k)
            if (poly_divides(f, unrank(f.p, d, k))) return false;
    }
    return true;
}

uint64_t Factorization::total_degree() const {
    uint64_t s = 0;
    for (const Term& t : terms) s += uint64_t(t.degree) * t.multiplicity;
    return s;
}

uint64_t Factorization::factor_count_with_multiplicity() const {
    uint64_t s = 0;
    for (const Term& t : terms) s += t.multiplicity;
    return s;
}

int Factorization::mobius() const {
    for (const Term& t : terms)
        if (t.multiplicity >= 2) return 0;
    return terms.size() % 2 == 0 ? 1 : -1;
}

bool Factorization::squarefree() const {
    for (const Term& t : terms)
        if (t.multiplicity >= 2) return false;
    return true;
}

bool Factorization::squarefull() const {
    for (const Term& t : terms)
        if (t.multiplicity < 2) return false;
    return true;
}

uint32_t Factorization::largest_prime_degree() const {
    uint32_t d = 0;
    for (const Term& t : terms) d = std::max(d, t.degree);
    return d;
}

uint32_t Factorization::smallest_prime_degree() const {
    uint32_t d = UINT32_MAX;
    for (const Term& t : terms) d = std::min(d, t.degree);
    return d;
}

SpfTable::SpfTable(uint32_t p, uint32_t max_degree, uint64_t max_entries)
    : p_(p), max_degree_(max_degree) {
    if (p < 2) throw std::invalid_argument("SpfTable: p must be a prime >= 2");
    require_rank_fits(p, max_degree);
    entries_ = 0;
    uint64_t pw = 1;
    for (uint32_t n = 0; n <= max_degree; ++n) {
        if (pw > max_entries || entries_ > max_entries - pw)
            throw ResourceError("SpfTable: entry budget exceeded (" +
                                std::to_string(max_entries) + ")");
        entries_ += pw;
        if (n < max_degree) pw *= p;
    }

    table_.resize(max_degree + 1);
    pw = 1;
    for (uint32_t n = 0; n <= max_degree; ++n) {
        table_[n].assign(pw, kUnset);
        if (n < max_degree) pw *= p;
    }
    degree_offsets_.assign(max_degree + 2, 0);

    for (uint32_t d = 1; d <= max_degree; ++d) {
        degree_offsets_[d] = prime_ranks_.size();
        const uint64_t count = table_[d].size();
        for (uint64_t k = 0; k < count; ++k) {
            if (table_[d][k] != kUnset) continue; // composite, already marked
            const uint32_t idx = static_cast<uint32_t>(prime_ranks_.size());
            prime_ranks_.push_back(k);
            table_[d][k] = idx;
            // mark all proper multiples P*B; first marker wins, and primes are
            // discovered in (degree, rank) order, so entries end up holding the
            // smallest prime factor
            const MonicPoly prime = unrank(p_, d, k);
            for (uint32_t m = 1; d + m <= max_degree; ++m) {
                ProductScanner scan(prime, m);
                auto& row = table_[d + m];
                do {
                    uint32_t& slot = row[scan.product_rank()];
                    if (slot == kUnset) slot = idx;
                } while (scan.next());
            }
        }
    }
    degree_offsets_[max_degree + 1] = prime_ranks_.size();
    // degree 0 has no primes; make offsets cumulative from degree 1
    degree_offsets_[0] = 0;
}

uint32_t SpfTable::spf_index(uint32_t n, uint64_t rank) const {
    if (n == 0 || n > max_degree_)
        throw std::invalid_argument("spf_index: degree out of range");
    return table_[n][rank];
}

bool SpfTable::is_prime(uint32_t n, uint64_t rank) const {
    const uint32_t idx = spf_index(n, rank);
    return prime_degree(idx) == n && prime_ranks_[idx] == rank;
}

uint64_t SpfTable::prime_count(uint32_t degree) const {
    if (degree == 0 || degree > max_degree_) return 0;
    return degree_offsets_[degree + 1] - degree_offsets_[degree];
}

uint32_t SpfTable::prime_degree(uint32_t index) const {
    const auto it = std::upper_bound(degree_offsets_.begin() + 1,
                                     degree_offsets_.end(), uint64_t(index));
    return static_cast<uint32_t>(it - degree_offsets_.begin() - 1);
}

MonicPoly SpfTable::prime_poly(uint32_t index) const {
    return unrank(p_, prime_degree(index), prime_ranks_[index]);
}

Factorization factorize(const MonicPoly& f, const SpfTable& table) {
    if (f.p != table.p())
        throw std::invalid_argument("factorize: field mismatch with table");
    if (f.degree() > table.max_degree())
        throw std::invalid_argument("factorize: degree exceeds table");
    Factorization out;
    MonicPoly cur = f;
    while (cur.degree() >= 1) {
        const uint32_t idx = table.spf_index(cur.degree(), rank_of(cur));
        const MonicPoly prime = table.prime_poly(idx);
        const uint32_t pd = prime.degree();
        const uint64_t pr = table.prime_rank(idx);
        // successive smallest prime factors are non-decreasing in (degree, rank),
        // so equal primes always arrive adjacent
        if (!out.terms.empty() && out.terms.back().degree == pd &&
            out.terms.back().rank == pr) {
            ++out.terms.back().multiplicity;
        } else {
            out.terms.push_back({pd, pr, 1});
        }
        cur = poly_divexact(cur, prime);
    }
    return out;
}

partitions::Partition factorization_type(const Factorization& fact) {
    partitions::Partition out;
    for (const auto& t : fact.terms)
        for (uint32_t i = 0; i < t.multiplicity; ++i) out.parts.push_back(t.degree);
    std::sort(out.parts.rbegin(), out.parts.rend());
    return out;
}

partitions::Partition factorization_type(const MonicPoly& f, const SpfTable& table) {
    return factorization_type(factorize(f, table));
}

ProductScanner::ProductScanner(const MonicPoly& a, uint32_t m)
    : p_(a.p), m_(m), n_(a.degree() + m) {
    require_rank_fits(p_, n_);
    full_a_ = full_coeffs(a);
    digits_.assign(m_, 0);
    f_.assign(n_, 0); // positions 0..n-1; the leading 1 of A*B is implicit
    pw_.assign(n_, 1);
    for (uint32_t i = 1; i < n_; ++i) pw_[i] = pw_[i - 1] * p_;
    // initial B = x^m: F = A * x^m
    rank_ = 0;
    for (uint32_t i = 0; i + 1 < full_a_.size(); ++i) {
        f_[m_ + i] = full_a_[i];
        rank_ += uint64_t(full_a_[i]) * pw_[m_ + i];
    }
}

void ProductScanner::add_shifted_a(uint32_t shift) {
    for (uint32_t j = 0; j < full_a_.size(); ++j) {
        const uint32_t pos = shift + j;
        if (pos >= n_) break; // leading coefficient of the product stays 1
        const uint32_t old = f_[pos];
        uint32_t nf = old + full_a_[j];
        if (nf >= p_) nf -= p_;
        f_[pos] = nf;
        rank_ += uint64_t(int64_t(nf) - int64_t(old)) * pw_[pos];
    }
}

bool ProductScanner::next() {
    uint32_t i = 0;
    // incrementing a coefficient of B by 1 changes F by x^i * A; a wrap from
    // p-1 to 0 is also a +1 change mod p
    while (i < m_ && digits_[i] == p_ - 1) {
        digits_[i] = 0;
        add_shifted_a(i);
        ++i;
    }
    if (i == m_) return false;
    ++digits_[i];
    add_shifted_a(i);
    return true;
}

} // namespace multab::gfpoly
