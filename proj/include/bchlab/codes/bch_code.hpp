#ifndef BCHLAB_CODES_BCH_CODE_HPP
#define BCHLAB_CODES_BCH_CODE_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bchlab/codes/cosets.hpp"
#include "bchlab/error.hpp"
#include "bchlab/gf2/cyclic_word.hpp"
#include "bchlab/gf2/field.hpp"
#include "bchlab/gf2/matrix.hpp"
#include "bchlab/gf2/poly.hpp"

namespace bchlab {

/// Systematic generator matrix G_C = (G_R | I_k) with the information part on
/// the k consecutive positions n-k .. n-1.
struct SystematicBasis {
    BitMatrix G_R;                 // k x (n-k); row l = coefficients of x^(n-k+l) mod g
    std::vector<int> positions;    // n-k .. n-1
    std::vector<CyclicWord> rows;  // full rows of G_C as words

    int k() const noexcept { return G_R.rows(); }
};

/// g(x) = prod_{j in M} (x - alpha^j); throws if a coefficient leaves GF(2).
inline Poly generator_from_roots(const BinaryField& field, const std::vector<int>& M) {
    std::vector<std::uint32_t> g{1};
    for (int j : M) {
        const std::uint32_t root = field.alpha_pow(j);
        std::vector<std::uint32_t> next(g.size() + 1, 0);
        for (std::size_t i = 0; i < g.size(); ++i) {
            next[i + 1] ^= g[i];
            next[i] ^= field.mul(g[i], root);
        }
        g = std::move(next);
    }
    std::vector<int> exps;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] > 1) throw Error(ErrorCode::InvalidLeader, "root set is not closed under conjugation");
        if (g[i] == 1) exps.push_back(static_cast<int>(i));
    }
    return Poly::from_exponents(exps);
}

/// Primitive binary BCH code of length n = 2^m - 1 defined by a set of
/// cyclotomic coset leaders. Immutable after construction.
class BchCode {
public:
    static BchCode from_cosets(const BinaryField& field, std::vector<int> leaders, std::string name = {}) {
        BchCode c;
        c.field_ = std::make_shared<const BinaryField>(field);
        c.n_ = field.order();
        c.cosets_ = std::make_shared<const CosetTable>(cyclotomic_cosets(c.n_));
        std::sort(leaders.begin(), leaders.end());
        leaders.erase(std::unique(leaders.begin(), leaders.end()), leaders.end());
        for (int l : leaders)
            if (l < 0 || l >= c.n_ || !c.cosets_->is_leader(l))
                throw Error(ErrorCode::InvalidLeader, std::to_string(l) + " is not a coset leader for n = " + std::to_string(c.n_));
        c.leaders_ = std::move(leaders);
        c.M_ = coset_union(*c.cosets_, c.leaders_);
        c.k_ = c.n_ - static_cast<int>(c.M_.size());
        c.name_ = std::move(name);
        c.g_ = generator_from_roots(field, c.M_);
        auto [h, rem] = divmod(Poly::xn_minus_one(c.n_), c.g_);
        if (!rem.is_zero()) throw Error(ErrorCode::InvalidLeader, "g does not divide x^n - 1");
        c.h_ = std::move(h);
        c.d_designed_ = bchlab::designed_distance(c.M_, c.n_);
        c.d_dual_designed_ = bchlab::designed_distance(complement(c.M_, c.n_), c.n_);
        c.build_tables();
        return c;
    }

    /// Convenience: field from (m, prim_poly).
    static BchCode from_cosets(int m, std::uint32_t prim_poly, std::vector<int> leaders, std::string name = {}) {
        return from_cosets(BinaryField(m, prim_poly), std::move(leaders), std::move(name));
    }

    const BinaryField& field() const noexcept { return *field_; }
    const CosetTable& cosets() const noexcept { return *cosets_; }
    int m() const noexcept { return field_->m(); }
    std::uint32_t prim_poly() const noexcept { return field_->prim_poly(); }
    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    int redundancy() const noexcept { return n_ - k_; }
    const std::string& name() const noexcept { return name_; }
    const std::vector<int>& leaders() const noexcept { return leaders_; }
    /// The exponent set M (union of the selected cosets).
    const std::vector<int>& defining_set() const noexcept { return M_; }
    const Poly& generator() const noexcept { return g_; }
    const Poly& check_poly() const noexcept { return h_; }
    CyclicWord generator_word() const { return CyclicWord::from_poly(n_, g_); }
    CyclicWord check_word() const { return CyclicWord::from_poly(n_, h_); }
    int designed_distance() const noexcept { return d_designed_; }
    /// Designed distance of the dual code (generator h, defining set Z_n \ M).
    int dual_designed_distance() const noexcept { return d_dual_designed_; }

    /// c(x) mod g(x), as a word supported on positions < n-k.
    CyclicWord remainder(const CyclicWord& c) const {
        check_length(c);
        CyclicWord s(n_);
        bits::for_each_set_bit(c.words(), [&](int j) { s ^= rem_table_[static_cast<std::size_t>(j)]; });
        return s;
    }

    bool is_codeword(const CyclicWord& c) const {
        check_length(c);
        thread_local std::vector<bits::Word> acc;
        acc.assign(c.num_words(), 0);
        bits::for_each_set_bit(c.words(), [&](int j) {
            bits::xor_into(acc, rem_table_[static_cast<std::size_t>(j)].words());
        });
        return bits::is_zero(acc);
    }

    const SystematicBasis& systematic() const noexcept { return *basis_; }

    /// Information bit i goes to position n-k+i.
    CyclicWord encode_systematic(const std::vector<int>& info) const {
        if (static_cast<int>(info.size()) != k_)
            throw Error(ErrorCode::LengthMismatch, "info length " + std::to_string(info.size()) + " != k = " + std::to_string(k_));
        CyclicWord c(n_);
        for (int i = 0; i < k_; ++i)
            if (info[static_cast<std::size_t>(i)]) c ^= basis_->rows[static_cast<std::size_t>(i)];
        return c;
    }

    /// Re-encodes the systematic part (positions n-k .. n-1) of any word.
    CyclicWord encode_from_systematic_part(const CyclicWord& r) const {
        check_length(r);
        CyclicWord c(n_);
        bits::for_each_set_bit(r.words(), [&](int j) {
            if (j >= n_ - k_) c ^= basis_->rows[static_cast<std::size_t>(j - (n_ - k_))];
        });
        return c;
    }

    /// True iff the columns at these k positions of any generator matrix have rank k.
    bool is_information_set(const std::vector<int>& positions) const {
        if (static_cast<int>(positions.size()) != k_) return false;
        BitMatrix G(k_, k_);
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j)
                G.set(i, j, basis_->rows[static_cast<std::size_t>(i)].test(positions[static_cast<std::size_t>(j)]));
        return G.rank() == k_;
    }

    /// k x n generator matrix with rows x^j g(x), j = 0 .. k-1.
    BitMatrix cyclic_generator_matrix() const {
        BitMatrix G(k_, n_);
        const auto ge = g_.exponents();
        for (int j = 0; j < k_; ++j)
            for (int e : ge) G.set(j, (e + j) % n_, true);
        return G;
    }

    BitMatrix systematic_generator_matrix() const {
        BitMatrix G(k_, n_);
        for (int i = 0; i < k_; ++i)
            for (int j : basis_->rows[static_cast<std::size_t>(i)].support()) G.set(i, j, true);
        return G;
    }

    void check_length(const CyclicWord& w) const {
        if (w.n() != n_)
            throw Error(ErrorCode::LengthMismatch, "word length " + std::to_string(w.n()) + " != n = " + std::to_string(n_));
    }

private:
    void build_tables() {
        const int r = n_ - k_;
        rem_table_.reserve(static_cast<std::size_t>(n_));
        // x^j mod g by repeated multiplication by x
        Poly cur = Poly::one();
        for (int j = 0; j < n_; ++j) {
            if (cur.degree() >= r && r >= 0) cur = cur % g_;
            rem_table_.push_back(CyclicWord::from_poly(n_, cur));
            cur = cur * Poly::monomial(1);
        }
        auto basis = std::make_shared<SystematicBasis>();
        basis->G_R = BitMatrix(k_, r);
        for (int i = 0; i < k_; ++i) {
            const int pos = r + i;
            basis->positions.push_back(pos);
            CyclicWord row = rem_table_[static_cast<std::size_t>(pos)];
            for (int j : row.support()) basis->G_R.set(i, j, true);
            row.flip(pos);
            basis->rows.push_back(std::move(row));
        }
        basis_ = std::move(basis);
    }

    std::shared_ptr<const BinaryField> field_;
    std::shared_ptr<const CosetTable> cosets_;
    int n_ = 0;
    int k_ = 0;
    std::string name_;
    std::vector<int> leaders_;
    std::vector<int> M_;
    Poly g_;
    Poly h_;
    int d_designed_ = 1;
    int d_dual_designed_ = 1;
    std::vector<CyclicWord> rem_table_;
    std::shared_ptr<const SystematicBasis> basis_;
};

/// The cyclic code generated by h(x): its words are exactly the b(x) with
/// c(x) b(x) = 0 mod x^n - 1 for every codeword c.
inline BchCode dual_code(const BchCode& c) {
    std::vector<int> rest;
    for (int l : c.cosets().leaders)
        if (!std::binary_search(c.leaders().begin(), c.leaders().end(), l)) rest.push_back(l);
    auto d = BchCode::from_cosets(c.field(), rest, c.name().empty() ? std::string{} : c.name() + "-dual");
    if (!(d.generator() == c.check_poly())) throw Error(ErrorCode::InvalidArgument, "dual generator mismatch");
    return d;
}

/// Primitive polynomials of degree m under which the given leaders produce the
/// requested check polynomial h(x).
inline std::vector<std::uint32_t> find_prim_polys_for_check(int m, const std::vector<int>& leaders, const Poly& target_h) {
    std::vector<std::uint32_t> out;
    for (auto p : BinaryField::primitive_polys(m))
        if (BchCode::from_cosets(m, p, leaders).check_poly() == target_h) out.push_back(p);
    return out;
}

} // namespace bchlab

#endif // BCHLAB_CODES_BCH_CODE_HPP
