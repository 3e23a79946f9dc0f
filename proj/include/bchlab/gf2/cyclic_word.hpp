#ifndef BCHLAB_GF2_CYCLIC_WORD_HPP
#define BCHLAB_GF2_CYCLIC_WORD_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "bchlab/error.hpp"
#include "bchlab/gf2/bits.hpp"
#include "bchlab/gf2/poly.hpp"

namespace bchlab {

/// Element of GF(2)[x] / (x^n - 1), stored as a packed length-n bit vector.
class CyclicWord {
public:
    CyclicWord() = default;
    explicit CyclicWord(int n) : n_(n), words_(bits::words_for(static_cast<std::size_t>(n)), 0) {
        if (n <= 0) throw Error(ErrorCode::InvalidArgument, "ring length must be positive");
    }

    /// Exponents are reduced mod n; repeated exponents cancel.
    static CyclicWord from_exponents(int n, std::initializer_list<int> exps) {
        return from_exponents(n, std::vector<int>(exps));
    }
    static CyclicWord from_exponents(int n, const std::vector<int>& exps) {
        CyclicWord w(n);
        for (int e : exps) w.flip(((e % n) + n) % n);
        return w;
    }

    /// Reduces p modulo x^n - 1.
    static CyclicWord from_poly(int n, const Poly& p) {
        CyclicWord w(n);
        for (int e : p.exponents()) w.flip(e % n);
        return w;
    }

    static CyclicWord from_bits(const std::vector<int>& bitvals) {
        CyclicWord w(static_cast<int>(bitvals.size()));
        for (std::size_t j = 0; j < bitvals.size(); ++j)
            if (bitvals[j]) w.set(static_cast<int>(j));
        return w;
    }

    static CyclicWord all_ones(int n) {
        CyclicWord w(n);
        for (auto& x : w.words_) x = ~bits::Word{0};
        w.words_.back() &= bits::tail_mask(static_cast<std::size_t>(n));
        return w;
    }

    int n() const noexcept { return n_; }
    std::size_t num_words() const noexcept { return words_.size(); }
    std::span<const bits::Word> words() const noexcept { return words_; }
    std::span<bits::Word> words() noexcept { return words_; }

    bool test(int j) const noexcept { return bits::test(words_, static_cast<std::size_t>(j)); }
    bool operator[](int j) const noexcept { return test(j); }
    void flip(int j) noexcept { bits::flip(words_, static_cast<std::size_t>(j)); }
    void set(int j) noexcept { bits::set(words_, static_cast<std::size_t>(j)); }
    void reset(int j) noexcept { bits::reset(words_, static_cast<std::size_t>(j)); }
    void clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

    int weight() const noexcept { return bits::popcount(words_); }
    bool is_zero() const noexcept { return bits::is_zero(words_); }

    std::vector<int> support() const {
        std::vector<int> out;
        bits::for_each_set_bit(words_, [&](int j) { out.push_back(j); });
        return out;
    }

    Poly to_poly() const { return Poly::from_exponents(support()); }

    /// x^s * w mod (x^n - 1); negative s rotates the other way.
    CyclicWord rotated(int s) const {
        CyclicWord out(n_);
        const int sh = ((s % n_) + n_) % n_;
        bits::rotate_left(out.words_, words_, static_cast<std::size_t>(n_), static_cast<std::size_t>(sh));
        return out;
    }

    /// this ^= x^s * other, without allocating when scratch is sized.
    void add_rotated(const CyclicWord& other, int s, CyclicWord& scratch) {
        const int sh = ((s % n_) + n_) % n_;
        bits::rotate_left(scratch.words_, other.words_, static_cast<std::size_t>(n_),
                          static_cast<std::size_t>(sh));
        bits::xor_into(words_, scratch.words_);
    }

    CyclicWord& operator^=(const CyclicWord& o) {
        check_same(o);
        bits::xor_into(words_, o.words_);
        return *this;
    }
    CyclicWord& operator+=(const CyclicWord& o) { return *this ^= o; }
    friend CyclicWord operator^(CyclicWord a, const CyclicWord& b) { return a ^= b; }
    friend CyclicWord operator+(CyclicWord a, const CyclicWord& b) { return a ^= b; }

    friend bool operator==(const CyclicWord& a, const CyclicWord& b) noexcept {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }

    /// Total order by (n, bit string b_0 b_1 ... b_{n-1}) lexicographically.
    friend bool lex_less(const CyclicWord& a, const CyclicWord& b) noexcept {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        for (std::size_t i = 0; i < a.words_.size(); ++i) {
            const bits::Word x = a.words_[i] ^ b.words_[i];
            if (x) {
                const int low = std::countr_zero(x);
                return ((a.words_[i] >> low) & 1u) == 0;
            }
        }
        return false;
    }

    friend int hamming_distance(const CyclicWord& a, const CyclicWord& b) {
        a.check_same(b);
        int d = 0;
        for (std::size_t i = 0; i < a.words_.size(); ++i) d += std::popcount(a.words_[i] ^ b.words_[i]);
        return d;
    }

    /// "x^14 + x^2 + 1" style.
    std::string to_string() const { return to_poly().to_string(); }

    /// "0101..." with b_0 first.
    std::string bit_string() const {
        std::string s(static_cast<std::size_t>(n_), '0');
        for (int j = 0; j < n_; ++j)
            if (test(j)) s[static_cast<std::size_t>(j)] = '1';
        return s;
    }

    std::size_t hash() const noexcept {
        std::size_t h = std::hash<int>{}(n_);
        for (auto w : words_) h ^= std::hash<bits::Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

    void check_same(const CyclicWord& o) const {
        if (o.n_ != n_)
            throw Error(ErrorCode::LengthMismatch,
                        "ring lengths differ: " + std::to_string(n_) + " vs " + std::to_string(o.n_));
    }

private:
    int n_ = 0;
    std::vector<bits::Word> words_;
};

struct CyclicWordHash {
    std::size_t operator()(const CyclicWord& w) const noexcept { return w.hash(); }
};

/// a * b mod (x^n - 1) as XOR of rotations of the heavier operand over the
/// support of the lighter one.
inline CyclicWord cyclic_mul(const CyclicWord& a, const CyclicWord& b) {
    a.check_same(b);
    const bool a_light = a.weight() <= b.weight();
    const CyclicWord& light = a_light ? a : b;
    const CyclicWord& heavy = a_light ? b : a;
    CyclicWord out(a.n());
    CyclicWord scratch(a.n());
    bits::for_each_set_bit(light.words(), [&](int s) { out.add_rotated(heavy, s, scratch); });
    return out;
}

/// Lexicographically minimal rotation of the bit string b_0 ... b_{n-1}.
inline CyclicWord canonical_rotation(const CyclicWord& w) {
    if (w.is_zero()) throw Error(ErrorCode::ZeroWord, "canonical rotation of the zero word");
    CyclicWord best = w;
    CyclicWord cur(w.n());
    for (int s = 1; s < w.n(); ++s) {
        bits::rotate_left(cur.words(), w.words(), static_cast<std::size_t>(w.n()),
                          static_cast<std::size_t>(s));
        if (lex_less(cur, best)) best = cur;
    }
    return best;
}

/// Smallest s > 0 with x^s w = w.
inline int rotation_period(const CyclicWord& w) {
    for (int s = 1; s < w.n(); ++s)
        if (w.n() % s == 0 && w.rotated(s) == w) return s;
    return w.n();
}

} // namespace bchlab

#endif // BCHLAB_GF2_CYCLIC_WORD_HPP
