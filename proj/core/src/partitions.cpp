#include "multab/partitions.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace multab::partitions {

uint64_t Partition::sum() const {
    uint64_t s = 0;
    for (uint32_t p : parts) s += p;
    return s;
}

std::vector<std::pair<uint32_t, uint32_t>> Partition::multiplicities() const {
    std::vector<std::pair<uint32_t, uint32_t>> out;
    for (size_t i = 0; i < parts.size();) {
        size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        out.emplace_back(parts[i], static_cast<uint32_t>(j - i));
        i = j;
    }
    return out;
}

std::string Partition::to_string() const {
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(parts[i]);
    }
    return s;
}

Partition Partition::parse(const std::string& text) {
    Partition out;
    if (text.empty()) return out;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        const std::string tok = text.substr(pos, next - pos);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad partition token '" + tok + "' in '" + text + "'");
        unsigned long v = std::stoul(tok);
        if (v == 0) throw std::invalid_argument("partition parts must be positive: '" + text + "'");
        out.parts.push_back(static_cast<uint32_t>(v));
        pos = next + 1;
        if (pos == text.size() && next != text.size())
            throw std::invalid_argument("trailing comma in partition '" + text + "'");
    }
    if (!std::is_sorted(out.parts.rbegin(), out.parts.rend()))
        throw std::invalid_argument("partition parts must be weakly decreasing: '" + text + "'");
    return out;
}

BigInt count_partitions(uint32_t n) {
    static std::vector<BigInt> cache{BigInt(1)}; // p(0) = 1
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= n) {
        const uint64_t m = cache.size();
        BigInt acc = 0;
        // p(m) = sum_{k>=1} (-1)^{k+1} [ p(m - k(3k-1)/2) + p(m - k(3k+1)/2) ]
        for (uint64_t k = 1;; ++k) {
            const uint64_t g1 = k * (3 * k - 1) / 2;
            if (g1 > m) break;
            const int sign = (k % 2 == 1) ? 1 : -1;
            if (sign > 0) acc += cache[m - g1]; else acc -= cache[m - g1];
            const uint64_t g2 = k * (3 * k + 1) / 2;
            if (g2 <= m) {
                if (sign > 0) acc += cache[m - g2]; else acc -= cache[m - g2];
            }
        }
        cache.push_back(acc);
    }
    return cache[n];
}

std::vector<Partition> all_partitions(uint32_t n) {
    std::vector<Partition> out;
    for_each_partition(n, [&](const Partition& p) { out.push_back(p); });
    return out;
}

namespace {

// Shared core: subset-sum reachability on [0, cap] for a raw parts list.
// Binary splitting over each part's multiplicity keeps the number of
// shift-or passes at O(#distinct * log multiplicity).
bool subset_sum_reaches(const std::vector<uint32_t>& sorted_parts, uint64_t target) {
    if (target == 0) return true;
    Bitset reach(target + 1);
    reach.set(0);
    size_t i = 0;
    const size_t n = sorted_parts.size();
    while (i < n) {
        const uint32_t d = sorted_parts[i];
        size_t j = i;
        while (j < n && sorted_parts[j] == d) ++j;
        uint64_t mult = j - i;
        i = j;
        uint64_t chunk = 1;
        while (mult > 0) {
            const uint64_t take = std::min(chunk, mult);
            mult -= take;
            const uint64_t shift = take * d;
            if (shift > target) break; // larger chunks only overshoot further
            reach.or_shifted_self(shift);
            chunk <<= 1;
        }
        if (reach.test(target)) return true;
    }
    return reach.test(target);
}

} // namespace

bool has_subpartition(const Partition& lambda, uint64_t b) {
    const uint64_t n = lambda.sum();
    if (b > n) throw std::invalid_argument("has_subpartition: b exceeds partition sum");
    const uint64_t target = std::min(b, n - b); // subset sums are symmetric
    return subset_sum_reaches(lambda.parts, target);
}

bool parts_have_subset_sum(const std::vector<uint32_t>& parts, uint64_t b) {
    uint64_t n = 0;
    for (uint32_t p : parts) n += p;
    if (b > n) throw std::invalid_argument("parts_have_subset_sum: b exceeds total");
    return subset_sum_reaches(parts, std::min(b, n - b));
}

SubsetSumProfile subset_sum_profile(const Partition& lambda, bool with_counts) {
    const uint64_t n = lambda.sum();
    SubsetSumProfile out;
    out.reachable = Bitset(n + 1);
    out.reachable.set(0);
    for (const auto& [d, m] : lambda.multiplicities()) {
        uint64_t mult = m, chunk = 1;
        while (mult > 0) {
            const uint64_t take = std::min(chunk, mult);
            mult -= take;
            const uint64_t shift = take * d;
            if (shift > n) break;
            out.reachable.or_shifted_self(shift);
            chunk <<= 1;
        }
    }
    if (with_counts) {
        out.counts.assign(n + 1, 0);
        out.counts[0] = 1;
        // bounded-multiplicity counting DP, exact in uint64_t for the scales
        // this is used at (counts <= 2^#parts)
        for (const auto& [d, m] : lambda.multiplicities()) {
            std::vector<uint64_t> next(n + 1, 0);
            for (uint64_t t = 0; t <= n; ++t) {
                if (out.counts[t] == 0) continue;
                for (uint64_t j = 0; j <= m && t + j * d <= n; ++j)
                    next[t + j * d] += out.counts[t];
            }
            out.counts.swap(next);
        }
    }
    return out;
}

BigRat cycle_type_probability(const Partition& lambda) {
    BigRat r(1, 1);
    BigInt z = centralizer_order(lambda);
    r /= BigRat(z);
    return r;
}

BigInt centralizer_order(const Partition& lambda) {
    BigInt z = 1;
    for (const auto& [j, m] : lambda.multiplicities()) {
        for (uint32_t i = 0; i < m; ++i) {
            mpz_mul_ui(z.get_mpz_t(), z.get_mpz_t(), j);
            mpz_mul_ui(z.get_mpz_t(), z.get_mpz_t(), i + 1);
        }
    }
    return z;
}

BigInt conjugacy_class_size(const Partition& lambda) {
    BigInt num = factorial(lambda.sum());
    BigInt z = centralizer_order(lambda);
    BigInt out;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), z.get_mpz_t());
    return out;
}

} // namespace multab::partitions
