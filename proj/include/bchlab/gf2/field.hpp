#ifndef BCHLAB_GF2_FIELD_HPP
#define BCHLAB_GF2_FIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bchlab/error.hpp"

namespace bchlab {

/// GF(2^m) in polynomial basis modulo a primitive polynomial; elements are
/// bitmasks of their basis coefficients (bit j <-> alpha^j).
class BinaryField {
public:
    /// Throws NotPrimitive when the root of prim_poly has order < 2^m - 1.
    BinaryField(int m, std::uint32_t prim_poly) : m_(m), prim_poly_(prim_poly) {
        if (m < 2 || m > 16) throw Error(ErrorCode::InvalidArgument, "extension degree must be in [2, 16]");
        if ((prim_poly >> m) != 1u)
            throw Error(ErrorCode::InvalidArgument, "polynomial does not have degree " + std::to_string(m));
        const int n = order();
        antilog_.assign(static_cast<std::size_t>(n), 0);
        log_.assign(static_cast<std::size_t>(n) + 1, -1);
        std::uint32_t e = 1;
        for (int i = 0; i < n; ++i) {
            if (i > 0 && e == 1)
                throw Error(ErrorCode::NotPrimitive,
                            "root order " + std::to_string(i) + " < " + std::to_string(n));
            antilog_[static_cast<std::size_t>(i)] = e;
            log_[e] = i;
            e <<= 1;
            if (e >> m) e ^= prim_poly;
        }
        if (e != 1) throw Error(ErrorCode::NotPrimitive, "root does not cycle back to 1");
    }

    /// Builds the field with the default polynomial for m.
    explicit BinaryField(int m) : BinaryField(m, default_primitive_poly(m)) {}

    int m() const noexcept { return m_; }
    std::uint32_t prim_poly() const noexcept { return prim_poly_; }
    /// n = 2^m - 1, the multiplicative order of alpha.
    int order() const noexcept { return (1 << m_) - 1; }

    /// alpha^i for any integer i.
    std::uint32_t alpha_pow(long long i) const noexcept {
        const long long n = order();
        return antilog_[static_cast<std::size_t>(((i % n) + n) % n)];
    }
    /// log_alpha(x) for x != 0.
    int log(std::uint32_t x) const {
        if (x == 0 || x > static_cast<std::uint32_t>(order()))
            throw Error(ErrorCode::InvalidArgument, "log of zero or out-of-range element");
        return log_[x];
    }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept { return a ^ b; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
        if (a == 0 || b == 0) return 0;
        return alpha_pow(static_cast<long long>(log_[a]) + log_[b]);
    }
    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw Error(ErrorCode::InvalidArgument, "inverse of zero");
        return alpha_pow(-static_cast<long long>(log_[a]));
    }

    const std::vector<std::uint32_t>& antilog_table() const noexcept { return antilog_; }
    const std::vector<int>& log_table() const noexcept { return log_; }

    static bool is_primitive(int m, std::uint32_t poly) {
        try {
            BinaryField f(m, poly);
            return true;
        } catch (const Error&) {
            return false;
        }
    }

    /// All primitive polynomials of degree m in increasing bitmask order.
    static std::vector<std::uint32_t> primitive_polys(int m) {
        std::vector<std::uint32_t> out;
        for (std::uint32_t p = (1u << m) | 1u; p < (2u << m); p += 2)
            if (is_primitive(m, p)) out.push_back(p);
        return out;
    }

    /// Lexicographically smallest primitive polynomial of each degree.
    static std::uint32_t default_primitive_poly(int m) {
        static constexpr std::uint32_t table[17] = {
            0,       0,       0x7,     0xB,     0x13,    0x25,   0x43,    0x83,   0x11D,
            0x211,   0x409,   0x805,   0x1053,  0x201B,  0x402B, 0x8003,  0x1002D};
        if (m < 2 || m > 16) throw Error(ErrorCode::InvalidArgument, "extension degree must be in [2, 16]");
        return table[m];
    }

private:
    int m_;
    std::uint32_t prim_poly_;
    std::vector<std::uint32_t> antilog_;
    std::vector<int> log_;
};

} // namespace bchlab

#endif // BCHLAB_GF2_FIELD_HPP
