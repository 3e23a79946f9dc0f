#ifndef BCHLAB_RM_RM_EQUIV_HPP
#define BCHLAB_RM_RM_EQUIV_HPP

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "bchlab/codes/bch_code.hpp"
#include "bchlab/codes/cosets.hpp"
#include "bchlab/error.hpp"
#include "bchlab/gf2/cyclic_word.hpp"
#include "bchlab/gf2/field.hpp"
#include "bchlab/gf2/matrix.hpp"
#include "bchlab/gf2/poly.hpp"

namespace bchlab {

namespace detail {

inline void check_rm_params(int m, int r) {
    if (m < 2 || m > 16 || r < 0 || r >= m) throw Error(ErrorCode::InvalidArgument, "need 0 <= r < m with 2 <= m <= 16");
}

inline long long choose(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long c = 1;
    for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    return c;
}

} // namespace detail

/// Leaders of the cyclotomic cosets whose members have binary weight in (0, m - r).
inline std::vector<int> rm_coset_leaders(int m, int r) {
    detail::check_rm_params(m, r);
    const auto t = cyclotomic_cosets((1 << m) - 1);
    std::vector<int> out;
    for (int l : t.leaders) {
        const int w = std::popcount(static_cast<unsigned>(l));
        if (w > 0 && w < m - r) out.push_back(l);
    }
    return out;
}

inline long long rm_dimension(int m, int r) {
    long long k = 0;
    for (int i = 0; i <= r; ++i) k += detail::choose(m, i);
    return k;
}

/// Coordinate map pi(i) = log of the field element whose basis coefficients
/// are the bits of i, for 1 <= i <= 2^m - 1. Index 0 is unused.
class RmPermutation {
public:
    explicit RmPermutation(const BinaryField& field) : m_(field.m()), pi_(static_cast<std::size_t>(field.order()) + 1, -1) {
        inv_.assign(static_cast<std::size_t>(field.order()), 0);
        for (int i = 1; i <= field.order(); ++i) {
            pi_[static_cast<std::size_t>(i)] = field.log(static_cast<std::uint32_t>(i));
            inv_[static_cast<std::size_t>(pi_[static_cast<std::size_t>(i)])] = i;
        }
    }
    int m() const noexcept { return m_; }
    int n() const noexcept { return (1 << m_) - 1; }
    int operator()(int i) const { return pi_.at(static_cast<std::size_t>(i)); }
    /// i with pi(i) = e
    int inverse(int e) const { return inv_.at(static_cast<std::size_t>(e)); }

private:
    int m_;
    std::vector<int> pi_;
    std::vector<int> inv_;
};

inline RmPermutation rm_permutation(const BinaryField& field) { return RmPermutation(field); }

/// (parity, c_pi(1), ..., c_pi(2^m - 1)) as a word of length 2^m.
inline CyclicWord extend_and_permute(const CyclicWord& c, const RmPermutation& pi) {
    if (c.n() != pi.n()) throw Error(ErrorCode::LengthMismatch, "word length differs from 2^m - 1");
    CyclicWord out(c.n() + 1);
    if (c.weight() & 1) out.set(0);
    for (int j = 1; j <= c.n(); ++j)
        if (c.test(pi(j))) out.set(j);
    return out;
}

/// Inverse of extend_and_permute after dropping the parity position.
inline CyclicWord puncture_and_unpermute(const CyclicWord& v, const RmPermutation& pi) {
    if (v.n() != pi.n() + 1) throw Error(ErrorCode::LengthMismatch, "word length differs from 2^m");
    CyclicWord c(pi.n());
    for (int j = 1; j <= pi.n(); ++j)
        if (v.test(j)) c.set(pi(j));
    return c;
}

/// R(r, m): evaluations of the monomials of degree <= r at every point
/// x in GF(2)^m, coordinate i holding the point with x_t = bit t of i.
struct RmCode {
    int r = 0;
    int m = 0;
    std::vector<CyclicWord> rows;

    int length() const noexcept { return 1 << m; }
    int k() const noexcept { return static_cast<int>(rows.size()); }

    static RmCode make(int r, int m) {
        detail::check_rm_params(m, r);
        RmCode code{r, m, {}};
        const int len = 1 << m;
        // monomial = subset mask of variables, in order of degree then mask
        for (int deg = 0; deg <= r; ++deg)
            for (unsigned mask = 0; mask < (1u << m); ++mask) {
                if (std::popcount(mask) != deg) continue;
                CyclicWord row(len);
                for (int i = 0; i < len; ++i)
                    if ((static_cast<unsigned>(i) & mask) == mask) row.set(i);
                code.rows.push_back(std::move(row));
            }
        return code;
    }

    BitMatrix generator() const { return rows_matrix(rows); }

    static BitMatrix rows_matrix(const std::vector<CyclicWord>& rows) {
        BitMatrix g(static_cast<int>(rows.size()), rows.empty() ? 0 : rows.front().n());
        for (int i = 0; i < g.rows(); ++i)
            for (int j : rows[static_cast<std::size_t>(i)].support()) g.set(i, j, true);
        return g;
    }
};

inline BchCode rm_bch_code(int m, int r, std::uint32_t prim_poly) {
    detail::check_rm_params(m, r);
    return BchCode::from_cosets(BinaryField(m, prim_poly), rm_coset_leaders(m, r));
}

/// Row space of the extended, permuted BCH code equals that of R(r, m).
inline bool verify_rm_equivalence(int m, int r, std::uint32_t prim_poly) {
    const auto code = rm_bch_code(m, r, prim_poly);
    const RmPermutation pi(code.field());
    std::vector<CyclicWord> ext;
    for (const auto& row : code.systematic().rows) ext.push_back(extend_and_permute(row, pi));
    const auto rm = RmCode::make(r, m);
    if (rm.k() != code.k()) return false;
    return same_row_space(RmCode::rows_matrix(ext), rm.generator());
}

/// Punctured, unpermuted RM codewords (exhaustive when 2^k <= trials, else
/// `trials` random ones) and all their cyclic shifts divide by the BCH generator.
inline bool verify_rmstar_cyclic(int m, int r, std::uint32_t prim_poly, long long trials, std::uint64_t seed = 1) {
    const auto code = rm_bch_code(m, r, prim_poly);
    const RmPermutation pi(code.field());
    const auto rm = RmCode::make(r, m);
    const int k = rm.k();
    auto check = [&](const CyclicWord& v) {
        const auto c = puncture_and_unpermute(v, pi);
        for (int s = 0; s < c.n(); ++s)
            if (!code.is_codeword(c.rotated(s))) return false;
        return true;
    };
    if (k < 62 && (1LL << k) <= trials) {
        for (long long mask = 0; mask < (1LL << k); ++mask) {
            CyclicWord v(rm.length());
            for (int i = 0; i < k; ++i)
                if (mask >> i & 1) v ^= rm.rows[static_cast<std::size_t>(i)];
            if (!check(v)) return false;
        }
        return true;
    }
    std::mt19937_64 rng(seed);
    for (long long t = 0; t < trials; ++t) {
        CyclicWord v(rm.length());
        for (const auto& row : rm.rows)
            if (rng() & 1) v ^= row;
        if (!check(v)) return false;
    }
    return true;
}

/// Exponents h in [0, n) with p(alpha^h) = 0.
inline std::vector<int> poly_roots(const Poly& p, const BinaryField& field) {
    std::vector<int> roots;
    const auto exps = p.exponents();
    for (int h = 0; h < field.order(); ++h) {
        std::uint32_t v = 0;
        for (int e : exps) v ^= field.alpha_pow(static_cast<long long>(h) * e);
        if (v == 0) roots.push_back(h);
    }
    return roots;
}

/// Generator of the punctured, unpermuted R(r, m): gcd of x^n - 1 with the
/// polynomials of its generator rows.
inline Poly rmstar_generator(int m, int r, const BinaryField& field) {
    detail::check_rm_params(m, r);
    if (field.m() != m) throw Error(ErrorCode::InvalidArgument, "field degree differs from m");
    const RmPermutation pi(field);
    Poly g = Poly::xn_minus_one(field.order());
    for (const auto& row : RmCode::make(r, m).rows) g = poly_gcd(g, puncture_and_unpermute(row, pi).to_poly());
    return g;
}

/// The roots of that generator are exactly alpha^h with 1 <= wt(h) <= m - r - 1,
/// and their number is 2^m - 1 - dim R(r, m).
inline bool verify_generator_roots(int m, int r, std::uint32_t prim_poly) {
    const BinaryField field(m, prim_poly);
    const auto roots = poly_roots(rmstar_generator(m, r, field), field);
    std::vector<int> expect;
    for (int h = 0; h < field.order(); ++h) {
        const int w = std::popcount(static_cast<unsigned>(h));
        if (w >= 1 && w <= m - r - 1) expect.push_back(h);
    }
    return roots == expect && static_cast<long long>(roots.size()) == field.order() - rm_dimension(m, r);
}

/// C(m,1) + ... + C(m, m-r-1) = 2^m - 1 - sum_{i<=r} C(m,i).
inline bool root_count_identity(int m, int r) {
    long long lhs = 0;
    for (int i = 1; i <= m - r - 1; ++i) lhs += detail::choose(m, i);
    return lhs == (1LL << m) - 1 - rm_dimension(m, r);
}

} // namespace bchlab

#endif // BCHLAB_RM_RM_EQUIV_HPP
