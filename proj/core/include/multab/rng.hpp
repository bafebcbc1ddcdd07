#pragma once

#include <array>
#include <cstdint>

namespace multab::rng {

// Philox4x64-10 block function: 4 output words from a 256-bit counter and a
// 128-bit key.  Pure function: streams are defined entirely by (key, counter),
// which is what makes per-trial substreams deterministic and order-free.
std::array<uint64_t, 4> philox4x64(const std::array<uint64_t, 4>& counter,
                                   const std::array<uint64_t, 2>& key);

// Independent random stream for one (seed, trial) pair: key = (seed, trial),
// counter = (block, 0, 0, 0).  Consumers may draw any number of values; equal
// (seed, trial) always yields the same sequence regardless of scheduling.
class TrialStream {
public:
    TrialStream(uint64_t seed, uint64_t trial) : key_{seed, trial} {}

    uint64_t next_u64() {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    // Unbiased uniform draw in [0, bound) by rejection; bound >= 1.
    uint64_t below(uint64_t bound) {
        const uint64_t threshold = (0 - bound) % bound; // 2^64 mod bound
        for (;;) {
            const uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

private:
    void refill() {
        buf_ = philox4x64({block_++, 0, 0, 0}, key_);
        pos_ = 0;
    }

    std::array<uint64_t, 2> key_;
    uint64_t block_ = 0;
    std::array<uint64_t, 4> buf_{};
    unsigned pos_ = 4;
};

} // namespace multab::rng
