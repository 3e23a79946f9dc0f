#ifndef BCHLAB_GF2_POLY_HPP
#define BCHLAB_GF2_POLY_HPP

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "bchlab/error.hpp"
#include "bchlab/gf2/bits.hpp"

namespace bchlab {

/// Polynomial over GF(2) of arbitrary degree, bit j = coefficient of x^j.
/// Always normalized: no zero high words.
class Poly {
public:
    Poly() = default;

    static Poly one() { return monomial(0); }

    static Poly monomial(int e) {
        Poly p;
        p.words_.assign(bits::words_for(static_cast<std::size_t>(e) + 1), 0);
        bits::set(p.words_, static_cast<std::size_t>(e));
        return p;
    }

    static Poly from_exponents(std::initializer_list<int> exps) {
        return from_exponents(std::vector<int>(exps));
    }

    /// Repeated exponents cancel (GF(2) addition).
    static Poly from_exponents(const std::vector<int>& exps) {
        Poly p;
        for (int e : exps) {
            if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
            p.grow(static_cast<std::size_t>(e) + 1);
            bits::flip(p.words_, static_cast<std::size_t>(e));
        }
        p.normalize();
        return p;
    }

    /// Low bits of an integer mask (bit j = coefficient of x^j).
    static Poly from_mask(std::uint64_t mask) {
        Poly p;
        p.words_ = {mask};
        p.normalize();
        return p;
    }

    /// x^n - 1 (= x^n + 1 over GF(2)).
    static Poly xn_minus_one(int n) { return from_exponents({n, 0}); }

    bool is_zero() const noexcept { return words_.empty(); }

    /// -1 for the zero polynomial.
    int degree() const noexcept {
        if (words_.empty()) return -1;
        return static_cast<int>((words_.size() - 1) * bits::kWordBits) + 63 -
               std::countl_zero(words_.back());
    }

    bool coeff(int j) const noexcept {
        if (j < 0 || static_cast<std::size_t>(j) >= words_.size() * bits::kWordBits) return false;
        return bits::test(words_, static_cast<std::size_t>(j));
    }

    int weight() const noexcept { return bits::popcount(words_); }

    std::vector<int> exponents() const {
        std::vector<int> out;
        bits::for_each_set_bit(words_, [&](int j) { out.push_back(j); });
        return out;
    }

    const std::vector<bits::Word>& words() const noexcept { return words_; }

    Poly& operator^=(const Poly& o) {
        grow(o.words_.size() * bits::kWordBits);
        for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] ^= o.words_[i];
        normalize();
        return *this;
    }
    Poly& operator+=(const Poly& o) { return *this ^= o; }

    friend Poly operator+(Poly a, const Poly& b) { return a ^= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        const Poly& sparse = a.weight() <= b.weight() ? a : b;
        const Poly& dense = &sparse == &a ? b : a;
        Poly out;
        out.words_.assign(bits::words_for(static_cast<std::size_t>(a.degree() + b.degree()) + 1), 0);
        for (int e : sparse.exponents()) out.add_shifted(dense, e);
        out.normalize();
        return out;
    }

    /// Quotient and remainder of a / b.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero polynomial");
        Poly rem = a;
        Poly quo;
        const int db = b.degree();
        int dr = rem.degree();
        if (dr >= db) quo.words_.assign(bits::words_for(static_cast<std::size_t>(dr - db) + 1), 0);
        while (dr >= db) {
            const int sh = dr - db;
            bits::set(quo.words_, static_cast<std::size_t>(sh));
            rem.add_shifted(b, sh);
            rem.normalize();
            dr = rem.degree();
        }
        quo.normalize();
        return {std::move(quo), std::move(rem)};
    }

    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

    friend bool operator==(const Poly& a, const Poly& b) noexcept { return a.words_ == b.words_; }

    /// Human-readable form, e.g. "x^8 + x^7 + x^6 + x^4 + 1".
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        auto exps = exponents();
        for (auto it = exps.rbegin(); it != exps.rend(); ++it) {
            if (!s.empty()) s += " + ";
            if (*it == 0)
                s += "1";
            else if (*it == 1)
                s += "x";
            else
                s += "x^" + std::to_string(*it);
        }
        return s;
    }

    /// dst ^= src * x^shift
    void add_shifted(const Poly& src, int shift) {
        const std::size_t need = static_cast<std::size_t>(src.degree() + shift) + 1;
        grow(need);
        const std::size_t ws = static_cast<std::size_t>(shift) / bits::kWordBits;
        const std::size_t bs = static_cast<std::size_t>(shift) % bits::kWordBits;
        for (std::size_t i = 0; i < src.words_.size(); ++i) {
            words_[i + ws] ^= src.words_[i] << bs;
            if (bs && i + ws + 1 < words_.size()) words_[i + ws + 1] ^= src.words_[i] >> (64 - bs);
        }
    }

private:
    void grow(std::size_t nbits) {
        const std::size_t nw = bits::words_for(nbits);
        if (words_.size() < nw) words_.resize(nw, 0);
    }
    void normalize() {
        while (!words_.empty() && words_.back() == 0) words_.pop_back();
    }

    std::vector<bits::Word> words_;
};

/// Monic greatest common divisor via Euclid; gcd(a, 0) = a.
inline Poly poly_gcd(Poly a, Poly b) {
    if (a.is_zero() && b.is_zero())
        throw Error(ErrorCode::InvalidArgument, "gcd of two zero polynomials");
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

} // namespace bchlab

#endif // BCHLAB_GF2_POLY_HPP
