#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace multab {

// Fixed-width bit vector with the one compound operation subset-sum DP needs:
// w |= w << k (truncated).  Kept separate from std::bitset because the width
// is a runtime value.
class Bitset {
public:
    Bitset() : nbits_(0) {}
    explicit Bitset(size_t nbits) : words_((nbits + 63) / 64, 0), nbits_(nbits) {}

    size_t size() const { return nbits_; }

    void set(size_t i) { words_[i >> 6] |= uint64_t(1) << (i & 63); }

    bool test(size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    // this |= (this << k), bits shifted past size() are dropped.
    void or_shifted_self(size_t k);

    size_t count() const;

    bool operator==(const Bitset&) const = default;

private:
    std::vector<uint64_t> words_;
    size_t nbits_;
};

} // namespace multab
