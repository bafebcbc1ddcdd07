#include "multab/bitset.hpp"

#include <bit>

namespace multab {

void Bitset::or_shifted_self(size_t k) {
    if (k == 0 || k >= nbits_) return;
    const size_t wshift = k >> 6;
    const unsigned bshift = k & 63;
    const size_t nw = words_.size();
    if (bshift == 0) {
        for (size_t i = nw; i-- > wshift;)
            words_[i] |= words_[i - wshift];
    } else {
        for (size_t i = nw; i-- > wshift;) {
            uint64_t v = words_[i - wshift] << bshift;
            if (i > wshift)
                v |= words_[i - wshift - 1] >> (64 - bshift);
            words_[i] |= v;
        }
    }
    // clear any bits past nbits_ introduced by the shift
    const unsigned tail = nbits_ & 63;
    if (tail != 0) words_.back() &= (uint64_t(1) << tail) - 1;
}

size_t Bitset::count() const {
    size_t c = 0;
    for (uint64_t w : words_) c += static_cast<size_t>(std::popcount(w));
    return c;
}

} // namespace multab
