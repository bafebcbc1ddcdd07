#pragma once

#include "multab/bigint.hpp"
#include "multab/bitset.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace multab::partitions {

// Integer partition, parts weakly decreasing.  The empty partition (n = 0)
// has no parts.
struct Partition {
    std::vector<uint32_t> parts;

    uint64_t sum() const;
    // (part value, multiplicity) pairs, part values strictly decreasing.
    std::vector<std::pair<uint32_t, uint32_t>> multiplicities() const;
    // Comma-separated parts, e.g. "2,1,1"; empty string for the empty partition.
    std::string to_string() const;
    // Inverse of to_string; rejects malformed input or non-decreasing order.
    static Partition parse(const std::string& text);

    bool operator==(const Partition&) const = default;
};

// p(n) via the pentagonal-number recurrence, cached, thread-safe.
BigInt count_partitions(uint32_t n);

namespace detail {
template <class Fn>
void generate(uint32_t remaining, uint32_t maxpart, Partition& buf, Fn& fn) {
    if (remaining == 0) {
        fn(std::as_const(buf));
        return;
    }
    uint32_t top = maxpart < remaining ? maxpart : remaining;
    for (uint32_t part = top; part >= 1; --part) {
        buf.parts.push_back(part);
        generate(remaining - part, part, buf, fn);
        buf.parts.pop_back();
    }
}
} // namespace detail

// Visit all partitions of n in decreasing lexicographic order:
// (n), (n-1,1), ..., (1,...,1).  The Partition reference passed to fn is
// reused between calls; copy it if you keep it.
template <class Fn>
void for_each_partition(uint32_t n, Fn&& fn) {
    Partition buf;
    detail::generate(n, n, buf, fn);
}

// Same, restricted to partitions whose parts are all <= maxpart.
template <class Fn>
void for_each_partition_max_part(uint32_t n, uint32_t maxpart, Fn&& fn) {
    Partition buf;
    detail::generate(n, maxpart, buf, fn);
}

// Same, restricted to partitions whose first (largest) part equals `first`.
// Useful for sharding a full enumeration into independent slices.
template <class Fn>
void for_each_partition_first_part(uint32_t n, uint32_t first, Fn&& fn) {
    if (first == 0) {
        if (n == 0) {
            Partition empty;
            fn(std::as_const(empty));
        }
        return;
    }
    if (first > n) return;
    Partition buf;
    buf.parts.push_back(first);
    detail::generate(n - first, first, buf, fn);
}

std::vector<Partition> all_partitions(uint32_t n);

// Does some sub-multiset of parts sum to exactly b?  Requires 0 <= b <= sum.
// Always true for b == 0 and b == sum; symmetric in b <-> sum - b.
bool has_subpartition(const Partition& lambda, uint64_t b);

// Convenience overload for a raw weakly-decreasing (or any-order) parts list;
// avoids building a Partition in hot sampling loops.
bool parts_have_subset_sum(const std::vector<uint32_t>& parts, uint64_t b);

struct SubsetSumProfile {
    Bitset reachable;             // index d in [0, n]: some sub-multiset sums to d
    std::vector<uint64_t> counts; // empty unless requested: #sub-multisets per sum
};

// Full subset-sum profile over [0, n].  reachable[0] and reachable[n] are
// always set and the reachable set is symmetric about n/2.
SubsetSumProfile subset_sum_profile(const Partition& lambda, bool with_counts = false);

// P(lambda) = prod_j 1 / (j^{m_j} m_j!): probability that a uniform
// permutation of S_n has cycle type lambda.
BigRat cycle_type_probability(const Partition& lambda);

// n! * P(lambda): size of the conjugacy class with cycle type lambda.
// Always an exact integer.
BigInt conjugacy_class_size(const Partition& lambda);

// z(lambda) = prod_j j^{m_j} m_j!, the centralizer order (n! / class size).
BigInt centralizer_order(const Partition& lambda);

} // namespace multab::partitions
