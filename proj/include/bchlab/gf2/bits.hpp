#ifndef BCHLAB_GF2_BITS_HPP
#define BCHLAB_GF2_BITS_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>

namespace bchlab::bits {

using Word = std::uint64_t;
inline constexpr int kWordBits = 64;

constexpr std::size_t words_for(std::size_t nbits) noexcept {
    return (nbits + kWordBits - 1) / kWordBits;
}

/// Mask of the valid bits in the last word of an nbits-long vector.
constexpr Word tail_mask(std::size_t nbits) noexcept {
    const std::size_t r = nbits % kWordBits;
    return r == 0 ? ~Word{0} : ((Word{1} << r) - 1);
}

inline bool test(std::span<const Word> v, std::size_t j) noexcept {
    return (v[j / kWordBits] >> (j % kWordBits)) & 1u;
}

inline void flip(std::span<Word> v, std::size_t j) noexcept {
    v[j / kWordBits] ^= Word{1} << (j % kWordBits);
}

inline void set(std::span<Word> v, std::size_t j) noexcept {
    v[j / kWordBits] |= Word{1} << (j % kWordBits);
}

inline void reset(std::span<Word> v, std::size_t j) noexcept {
    v[j / kWordBits] &= ~(Word{1} << (j % kWordBits));
}

inline int popcount(std::span<const Word> v) noexcept {
    int c = 0;
    for (Word w : v) c += std::popcount(w);
    return c;
}

inline void xor_into(std::span<Word> dst, std::span<const Word> src) noexcept {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

inline bool is_zero(std::span<const Word> v) noexcept {
    for (Word w : v)
        if (w) return false;
    return true;
}

/// dst = src cyclically rotated so that bit j moves to (j + s) mod n.
/// dst and src must not alias and hold words_for(n) words.
inline void rotate_left(std::span<Word> dst, std::span<const Word> src, std::size_t n,
                        std::size_t s) noexcept {
    const std::size_t nw = words_for(n);
    s %= n;
    if (nw == 1) {
        const Word x = src[0];
        dst[0] = s == 0 ? x : (((x << s) | (x >> (n - s))) & tail_mask(n));
        return;
    }
    for (std::size_t i = 0; i < nw; ++i) dst[i] = 0;
    // bits [0, n-s) move up by s; anything pushed past n is masked below
    {
        const std::size_t ws = s / kWordBits, bs = s % kWordBits;
        for (std::size_t i = 0; i + ws < nw; ++i) {
            Word lo = src[i] << bs;
            dst[i + ws] |= lo;
            if (bs && i + ws + 1 < nw) dst[i + ws + 1] |= src[i] >> (kWordBits - bs);
        }
    }
    // high part: bits [n-s, n) move down by n-s
    if (s != 0) {
        const std::size_t d = n - s;
        const std::size_t ws = d / kWordBits, bs = d % kWordBits;
        for (std::size_t i = ws; i < nw; ++i) {
            Word hi = src[i] >> bs;
            if (bs && i + 1 < nw) hi |= src[i + 1] << (kWordBits - bs);
            dst[i - ws] |= hi;
        }
    }
    dst[nw - 1] &= tail_mask(n);
}

/// Calls f(j) for every set bit j in ascending order.
template <class F>
inline void for_each_set_bit(std::span<const Word> v, F&& f) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        Word w = v[i];
        while (w) {
            const int b = std::countr_zero(w);
            f(static_cast<int>(i * kWordBits + b));
            w &= w - 1;
        }
    }
}

} // namespace bchlab::bits

#endif // BCHLAB_GF2_BITS_HPP
