#ifndef BCHLAB_DECODERS_HARD_HPP
#define BCHLAB_DECODERS_HARD_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bchlab/codes/bch_code.hpp"
#include "bchlab/decoders/info_set.hpp"
#include "bchlab/decoders/outcome.hpp"
#include "bchlab/error.hpp"
#include "bchlab/gf2/matrix.hpp"
#include "bchlab/harness/channel.hpp"
#include "bchlab/reliability/phi.hpp"
#include "bchlab/wsearch/check_set.hpp"

namespace bchlab {

/// Positions ordered most reliable first (ascending Phi, ties by index).
inline std::vector<int> reliability_order(const PhiVector& phi) {
    std::vector<int> order(phi.counts.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return phi[a] < phi[b]; });
    return order;
}

namespace detail {

inline DecodeOutcome single_result(const CyclicWord& input, CyclicWord c, long long work) {
    DecodeOutcome out;
    out.est_errors = hamming_distance(input, c);
    out.list.push_back(c);
    out.best = std::move(c);
    out.status = DecodeStatus::Success;
    out.work = work;
    return out;
}

inline void pick_best(DecodeOutcome& out, Rng* tie_rng) {
    if (out.list.empty()) return;
    std::size_t pick = 0;
    if (tie_rng && out.list.size() > 1) {
        std::uniform_int_distribution<std::size_t> d(0, out.list.size() - 1);
        pick = d(*tie_rng);
    }
    out.best = out.list[pick];
    out.status = DecodeStatus::Success;
}

} // namespace detail

/// Iteratively flips the positions of maximal Phi until every check is satisfied.
inline DecodeOutcome decode_erd(const CyclicWord& r, const CheckSet& cs, int max_iter, int maxflip, Rng& rng) {
    if (max_iter < 1) throw Error(ErrorCode::InvalidArgument, "max_iter must be positive");
    if (maxflip < 1) throw Error(ErrorCode::InvalidArgument, "maxflip must be positive");
    PhiState st(r, cs);
    std::vector<int> J;
    int iter = 0;
    for (; iter < max_iter && !st.satisfied(); ++iter) {
        const int top = st.phi().max();
        J.clear();
        for (int j = 0; j < st.phi().n(); ++j)
            if (st.phi()[j] == top) J.push_back(j);
        if (static_cast<int>(J.size()) > maxflip) {
            for (int i = 0; i < maxflip; ++i) {
                std::uniform_int_distribution<std::size_t> d(static_cast<std::size_t>(i), J.size() - 1);
                std::swap(J[static_cast<std::size_t>(i)], J[d(rng)]);
            }
            J.resize(static_cast<std::size_t>(maxflip));
        }
        st.flip(J);
    }
    if (!st.satisfied()) {
        DecodeOutcome fail;
        fail.work = iter;
        return fail;
    }
    return detail::single_result(r, st.word(), iter);
}

/// Re-encodes r on the most reliable information set under every flip pattern
/// and keeps the candidates closest to r.
inline DecodeOutcome decode_isd(const CyclicWord& r, const PhiVector& phi, const BchCode& code, const FlipPlan& plan,
                                Rng* tie_rng = nullptr) {
    code.check_length(r);
    if (plan.patterns.empty()) throw Error(ErrorCode::InvalidArgument, "empty flip plan");
    const auto order = reliability_order(phi);
    const InformationSet is(code, order);
    const CyclicWord base = is.encode(r);
    const auto res = search_patterns<int>(is, base ^ r, plan, [](std::span<const bits::Word> d) { return bits::popcount(d); });
    DecodeOutcome out;
    out.work = res.evaluated;
    out.est_errors = res.best_cost;
    for (auto p : res.best_patterns) out.list.push_back(is.apply(base, plan.patterns[p]));
    detail::pick_best(out, tie_rng);
    return out;
}

/// One redundancy-set decoding step on an already shifted word.
struct RsdStep {
    CyclicWord c_w;                 // re-encoding of the systematic part
    CyclicWord r;                   // input + c_w, zero on the systematic positions
    std::vector<int> B;             // systematic indices (position - (n-k)), least reliable first
    std::vector<int> G;             // redundancy positions, most reliable first
    std::vector<int> rows;          // first mu of B
    std::vector<int> cols;          // mu columns of G_R giving an invertible D
    BitMatrix D, D_inv;
    std::vector<int> r_G;           // r on cols
    std::vector<int> epsilon;       // length k, error estimate on the systematic part
    CyclicWord candidate;
    bool ok = false;
};

namespace detail {

inline CyclicWord rsd_candidate(const BchCode& code, const CyclicWord& c_w, const std::vector<int>& rows,
                                const BitMatrix& D_inv, const std::vector<int>& r_G, std::vector<int>* eps_out) {
    const auto eps_mu = D_inv.left_multiply(r_G);
    CyclicWord c = c_w;
    std::vector<int> eps(static_cast<std::size_t>(code.k()), 0);
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (eps_mu[i]) {
            eps[static_cast<std::size_t>(rows[i])] = 1;
            c ^= code.systematic().rows[static_cast<std::size_t>(rows[i])];
        }
    if (eps_out) *eps_out = std::move(eps);
    return c;
}

} // namespace detail

inline RsdStep rsd_step(const CyclicWord& r_bar, const PhiVector& phi, const BchCode& code, int mu) {
    code.check_length(r_bar);
    const int n = code.n(), k = code.k(), red = n - k;
    if (mu < 1 || mu > std::min(k, red)) throw Error(ErrorCode::InvalidArgument, "mu must lie in [1, min(k, n-k)]");
    RsdStep s;
    s.c_w = code.encode_from_systematic_part(r_bar);
    s.r = r_bar ^ s.c_w;
    s.B.resize(static_cast<std::size_t>(k));
    std::iota(s.B.begin(), s.B.end(), 0);
    std::stable_sort(s.B.begin(), s.B.end(), [&](int a, int b) { return phi[red + a] > phi[red + b]; });
    s.G.resize(static_cast<std::size_t>(red));
    std::iota(s.G.begin(), s.G.end(), 0);
    std::stable_sort(s.G.begin(), s.G.end(), [&](int a, int b) { return phi[a] < phi[b]; });
    s.rows.assign(s.B.begin(), s.B.begin() + mu);

    // columns taken in G order, skipping any that depends on those already taken
    const auto& GR = code.systematic().G_R;
    const std::size_t mw = bits::words_for(static_cast<std::size_t>(mu));
    std::vector<std::pair<int, std::vector<bits::Word>>> basis;
    std::vector<bits::Word> v(mw);
    for (int col : s.G) {
        if (static_cast<int>(s.cols.size()) == mu) break;
        std::fill(v.begin(), v.end(), 0);
        for (int i = 0; i < mu; ++i)
            if (GR.get(s.rows[static_cast<std::size_t>(i)], col)) bits::set(v, static_cast<std::size_t>(i));
        for (const auto& [piv, b] : basis)
            if (bits::test(v, static_cast<std::size_t>(piv))) bits::xor_into(v, b);
        int piv = -1;
        bits::for_each_set_bit(v, [&](int j) {
            if (piv < 0) piv = j;
        });
        if (piv < 0) continue;
        basis.emplace_back(piv, v);
        s.cols.push_back(col);
    }
    if (static_cast<int>(s.cols.size()) < mu) return s;
    s.D = GR.select(s.rows, s.cols);
    auto inv = s.D.inverse();
    if (!inv) return s;
    s.D_inv = std::move(*inv);
    for (int col : s.cols) s.r_G.push_back(s.r.test(col) ? 1 : 0);
    s.candidate = detail::rsd_candidate(code, s.c_w, s.rows, s.D_inv, s.r_G, &s.epsilon);
    s.ok = true;
    return s;
}

inline int default_mu(const BchCode& code) { return std::min((code.k() + 1) / 2, code.redundancy()); }

/// nu shifts spread evenly around the cycle: round(i n / nu).
inline std::vector<int> evenly_spaced_shifts(int n, int nu) {
    if (nu < 1 || nu > n) throw Error(ErrorCode::InvalidArgument, "shift count must lie in [1, n]");
    std::vector<int> s;
    for (int i = 0; i < nu; ++i) s.push_back(static_cast<int>((static_cast<long long>(2 * i) * n + nu) / (2 * nu)));
    return s;
}

/// Redundancy set decoding over cyclic shifts of r_bar; flip_budget extra
/// weight-ordered flips of r_G per shift.
inline DecodeOutcome decode_rsd(const CyclicWord& r_bar, const BchCode& code, const CheckSet& cs, int mu,
                                const std::vector<int>& shifts, int flip_budget = 0,
                                const PhiVector* phi_in = nullptr, Rng* tie_rng = nullptr) {
    code.check_length(r_bar);
    if (shifts.empty()) throw Error(ErrorCode::InvalidArgument, "at least one shift is required");
    if (flip_budget < 0) throw Error(ErrorCode::InvalidArgument, "flip budget must be non-negative");
    const PhiVector phi = phi_in ? *phi_in : compute_phi(r_bar, cs);
    const int n = code.n();
    FlipPlan flips;
    if (flip_budget > 0) {
        for (int w = 0; w <= mu && flips.patterns.size() <= static_cast<std::size_t>(flip_budget); ++w)
            detail::append_combinations(flips.patterns, 0, mu, w);
        if (flips.patterns.size() > static_cast<std::size_t>(flip_budget) + 1) flips.patterns.resize(static_cast<std::size_t>(flip_budget) + 1);
    } else {
        flips.patterns.emplace_back();
    }
    DecodeOutcome out;
    int best = n + 1;
    auto consider = [&](CyclicWord c) {
        const int d = hamming_distance(c, r_bar);
        if (d < best) {
            best = d;
            out.list.clear();
        }
        if (d == best && !out.contains(c)) out.list.push_back(std::move(c));
    };
    for (int s : shifts) {
        const auto step = rsd_step(r_bar.rotated(s), phi.rotated(s), code, mu);
        if (!step.ok) continue;
        for (const auto& f : flips.patterns) {
            ++out.work;
            if (f.empty()) {
                consider(step.candidate.rotated(-s));
                continue;
            }
            auto rg = step.r_G;
            for (int i : f) rg[static_cast<std::size_t>(i)] ^= 1;
            consider(detail::rsd_candidate(code, step.c_w, step.rows, step.D_inv, rg, nullptr).rotated(-s));
        }
    }
    if (out.list.empty()) return out;
    out.est_errors = best;
    detail::pick_best(out, tie_rng);
    return out;
}

/// Brute-force bounded-distance decoder: finds the unique error of weight at
/// most `radius` by meeting syndromes of half-weight patterns in the middle.
class BddOracle {
public:
    explicit BddOracle(const BchCode& code, std::optional<int> radius = std::nullopt)
        : code_(&code), radius_(radius.value_or((code.designed_distance() - 1) / 2)) {
        if (code.redundancy() > 64) throw Error(ErrorCode::InvalidArgument, "syndromes wider than 64 bits");
        if (radius_ < 0) throw Error(ErrorCode::InvalidArgument, "negative radius");
        const int n = code.n();
        for (int j = 0; j < n; ++j) {
            CyclicWord x(n);
            x.set(j);
            syn_.push_back(syndrome(x));
        }
        half_ = (radius_ + 1) / 2;
        for (int w = 0; w <= half_; ++w) detail::append_combinations(patterns_, 0, n, w);
        table_.reserve(patterns_.size());
        for (std::uint32_t i = 0; i < patterns_.size(); ++i) table_.emplace(pattern_syndrome(patterns_[i]), i);
    }

    int radius() const noexcept { return radius_; }

    DecodeOutcome decode(const CyclicWord& r) const {
        code_->check_length(r);
        const std::uint64_t s = syndrome(r);
        DecodeOutcome out;
        std::vector<int> best;
        int best_w = radius_ + 1;
        for (const auto& e1 : patterns_) {
            if (static_cast<int>(e1.size()) > radius_ - half_) break;
            auto [lo, hi] = table_.equal_range(s ^ pattern_syndrome(e1));
            for (auto it = lo; it != hi; ++it) {
                std::vector<int> e;
                const auto& e2 = patterns_[it->second];
                std::set_symmetric_difference(e1.begin(), e1.end(), e2.begin(), e2.end(), std::back_inserter(e));
                if (static_cast<int>(e.size()) < best_w) {
                    best_w = static_cast<int>(e.size());
                    best = std::move(e);
                }
            }
            ++out.work;
        }
        if (best_w > radius_) return out;
        CyclicWord c = r;
        for (int j : best) c.flip(j);
        out.best = c;
        out.list.push_back(std::move(c));
        out.est_errors = best_w;
        out.status = DecodeStatus::Success;
        return out;
    }

private:
    std::uint64_t syndrome(const CyclicWord& w) const { return code_->remainder(w).words()[0]; }
    std::uint64_t pattern_syndrome(const std::vector<int>& p) const {
        std::uint64_t s = 0;
        for (int j : p) s ^= syn_[static_cast<std::size_t>(j)];
        return s;
    }

    const BchCode* code_;
    int radius_;
    int half_ = 0;
    std::vector<std::uint64_t> syn_;
    std::vector<std::vector<int>> patterns_;
    std::unordered_multimap<std::uint64_t, std::uint32_t> table_;
};

} // namespace bchlab

#endif // BCHLAB_DECODERS_HARD_HPP
