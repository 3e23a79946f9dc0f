#ifndef BCHLAB_SOFT_SOFT_HPP
#define BCHLAB_SOFT_SOFT_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "bchlab/codes/bch_code.hpp"
#include "bchlab/decoders/hard.hpp"
#include "bchlab/decoders/info_set.hpp"
#include "bchlab/decoders/outcome.hpp"
#include "bchlab/error.hpp"
#include "bchlab/gf2/bits.hpp"
#include "bchlab/harness/channel.hpp"
#include "bchlab/wsearch/check_set.hpp"

namespace bchlab {

inline constexpr double kSoftEps = 1e-7;

/// Per-position reliabilities; positive means bit 0.
struct SoftReliability {
    std::vector<double> values;
    std::vector<double> extrinsic;  // Phi_j before damping (empty for channel-only values)
    long long admitted = 0;         // check rotations that contributed

    int n() const noexcept { return static_cast<int>(values.size()); }
    double operator[](int j) const noexcept { return values[static_cast<std::size_t>(j)]; }
    CyclicWord hard() const {
        CyclicWord r(n());
        for (int j = 0; j < n(); ++j)
            if (values[static_cast<std::size_t>(j)] < 0.0) r.set(j);
        return r;
    }
};

inline SoftReliability channel_reliability(std::span<const double> y, double sigma_sq) {
    if (!(sigma_sq > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma^2 must be positive");
    SoftReliability L;
    L.values.resize(y.size());
    for (std::size_t j = 0; j < y.size(); ++j)
        L.values[j] = std::clamp(std::tanh(y[j] / sigma_sq), -1.0 + kSoftEps, 1.0 - kSoftEps);
    return L;
}

/// Every cyclic rotation of every check, with packed position masks for the
/// reliability filter.
class CheckRotations {
public:
    explicit CheckRotations(const CheckSet& cs)
        : n_(cs.n), nw_(bits::words_for(static_cast<std::size_t>(cs.n))) {
        for (const auto& c : cs.checks) {
            if (c.n() != n_) throw Error(ErrorCode::LengthMismatch, "check length differs from the code length");
            bases_.push_back(c.support());
        }
        masks_.assign(count() * nw_, 0);
        for (std::size_t b = 0; b < bases_.size(); ++b)
            for (int s = 0; s < n_; ++s) {
                auto m = mask_mut(b * static_cast<std::size_t>(n_) + static_cast<std::size_t>(s));
                for (int t : bases_[b]) bits::set(m, static_cast<std::size_t>((t + s) % n_));
            }
    }

    int n() const noexcept { return n_; }
    std::size_t num_checks() const noexcept { return bases_.size(); }
    std::size_t count() const noexcept { return bases_.size() * static_cast<std::size_t>(n_); }
    const std::vector<int>& base_support(std::size_t b) const noexcept { return bases_[b]; }
    std::span<const bits::Word> mask(std::size_t i) const noexcept { return {masks_.data() + i * nw_, nw_}; }
    std::size_t num_words() const noexcept { return nw_; }

private:
    std::span<bits::Word> mask_mut(std::size_t i) noexcept { return {masks_.data() + i * nw_, nw_}; }

    int n_;
    std::size_t nw_;
    std::vector<std::vector<int>> bases_;
    std::vector<bits::Word> masks_;
};

namespace detail {

inline double clamp_magnitude(double v) noexcept {
    const double a = std::clamp(std::abs(v), kSoftEps, 1.0 - kSoftEps);
    return v < 0.0 ? -a : a;
}

// positions sorted by descending |v|, then descending |tie| (if given), then index
inline std::vector<int> by_magnitude(std::span<const double> v, std::span<const double> tie = {}) {
    std::vector<int> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
        if (std::abs(v[ua]) != std::abs(v[ub])) return std::abs(v[ua]) > std::abs(v[ub]);
        if (!tie.empty() && std::abs(tie[ua]) != std::abs(tie[ub])) return std::abs(tie[ua]) > std::abs(tie[ub]);
        return a < b;
    });
    return idx;
}

} // namespace detail

/// A rotation is admitted when at most one of its positions lies outside the
/// T most reliable positions of L (ties broken by |y|). No T admits every rotation.
inline std::vector<bits::Word> unreliable_mask(const SoftReliability& L, std::optional<int> T,
                                               std::span<const double> y = {}) {
    std::vector<bits::Word> u(bits::words_for(static_cast<std::size_t>(L.n())), 0);
    if (!T) return u;
    if (*T < 0 || *T > L.n()) throw Error(ErrorCode::InvalidArgument, "T must lie in [0, n]");
    const auto order = detail::by_magnitude(L.values, y);
    for (int i = *T; i < L.n(); ++i) bits::set(u, static_cast<std::size_t>(order[static_cast<std::size_t>(i)]));
    return u;
}

inline long long count_admitted(const CheckRotations& rot, std::span<const bits::Word> unreliable) {
    long long a = 0;
    for (std::size_t i = 0; i < rot.count(); ++i) {
        const auto m = rot.mask(i);
        int hits = 0;
        for (std::size_t w = 0; w < rot.num_words() && hits <= 1; ++w) hits += std::popcount(m[w] & unreliable[w]);
        if (hits <= 1) ++a;
    }
    return a;
}

/// One pass of extrinsic information from the check rotations: L' = L + alpha Phi.
inline SoftReliability extrinsic_update(const SoftReliability& L, const CheckRotations& rot, std::optional<int> T,
                                        double alpha, std::span<const double> y = {}) {
    if (L.n() != rot.n()) throw Error(ErrorCode::LengthMismatch, "reliability length differs from the check length");
    if (alpha < 0.0) throw Error(ErrorCode::InvalidArgument, "alpha must be non-negative");
    const int n = L.n();
    SoftReliability out;
    out.values = L.values;
    out.extrinsic.assign(static_cast<std::size_t>(n), 0.0);
    if (alpha == 0.0) return out;

    std::vector<double> lc(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) lc[static_cast<std::size_t>(j)] = detail::clamp_magnitude(L[j]);
    const auto u = unreliable_mask(L, T, y);
    std::vector<int> pos;
    for (std::size_t b = 0; b < rot.num_checks(); ++b) {
        const auto& base = rot.base_support(b);
        pos.resize(base.size());
        for (int s = 0; s < n; ++s) {
            const auto m = rot.mask(b * static_cast<std::size_t>(n) + static_cast<std::size_t>(s));
            int hits = 0;
            for (std::size_t w = 0; w < u.size() && hits <= 1; ++w) hits += std::popcount(m[w] & u[w]);
            if (hits > 1) continue;
            ++out.admitted;
            double delta = 1.0;
            for (std::size_t i = 0; i < base.size(); ++i) {
                pos[i] = (base[i] + s) % n;
                delta *= lc[static_cast<std::size_t>(pos[i])];
            }
            for (int h : pos) {
                const double ratio = std::clamp(delta / lc[static_cast<std::size_t>(h)], -1.0 + kSoftEps, 1.0 - kSoftEps);
                out.extrinsic[static_cast<std::size_t>(h)] += 2.0 * std::atanh(ratio);
            }
        }
    }
    for (int j = 0; j < n; ++j)
        out.values[static_cast<std::size_t>(j)] += alpha * out.extrinsic[static_cast<std::size_t>(j)];
    return out;
}

enum class SoftMetric { Channel, Combined };

struct SoftDecoderConfig {
    double sigma_sq = 1.0;
    double alpha = 0.0;          // 0: channel reliabilities only
    std::optional<int> T;        // reliability filter; none admits every rotation
    SoftMetric metric = SoftMetric::Channel;
};

/// Scan order of the soft ISD: descending |L'|, then descending |y|, then index.
inline std::vector<int> soft_order(const SoftReliability& L, std::span<const double> y) {
    return detail::by_magnitude(L.values, y);
}

inline SoftReliability combined_reliability(std::span<const double> y, const CheckRotations* rot,
                                            const SoftDecoderConfig& cfg) {
    auto L = channel_reliability(y, cfg.sigma_sq);
    if (cfg.alpha == 0.0 || !rot) return L;
    return extrinsic_update(L, *rot, cfg.T, cfg.alpha, y);
}

/// Soft information set decoding over a flip plan. The winner minimises the
/// squared Euclidean distance between its BPSK image and y, i.e. the sum of
/// |y_j| over positions disagreeing with hard(y) (|L'_j| and hard(L') with
/// SoftMetric::Combined).
inline DecodeOutcome decode_isd_soft(std::span<const double> y, const BchCode& code, const CheckRotations* rot,
                                     const SoftDecoderConfig& cfg, const FlipPlan& plan, Rng* tie_rng = nullptr) {
    const int n = code.n();
    if (static_cast<int>(y.size()) != n) throw Error(ErrorCode::LengthMismatch, "received vector length differs from n");
    if (rot && rot->n() != n) throw Error(ErrorCode::LengthMismatch, "check length differs from n");
    const auto L = combined_reliability(y, rot, cfg);
    const auto order = soft_order(L, y);
    const InformationSet is(code, order);

    const bool chan = cfg.metric == SoftMetric::Channel;
    std::vector<double> cost_w(static_cast<std::size_t>(n));
    CyclicWord ref(n);
    for (int j = 0; j < n; ++j) {
        const double v = chan ? y[static_cast<std::size_t>(j)] : L[j];
        cost_w[static_cast<std::size_t>(j)] = std::abs(v);
        if (v < 0.0) ref.set(j);
    }
    const auto base = is.encode(L.hard());
    const auto res = search_patterns<double>(is, base ^ ref, plan, [&](std::span<const bits::Word> d) {
        double s = 0.0;
        bits::for_each_set_bit(d, [&](int j) { s += cost_w[static_cast<std::size_t>(j)]; });
        return s;
    });

    DecodeOutcome out;
    out.work = res.evaluated;
    for (std::size_t p : res.best_patterns) {
        auto c = is.apply(base, plan.patterns[p]);
        if (!out.contains(c)) out.list.push_back(std::move(c));
    }
    detail::pick_best(out, tie_rng);
    out.est_errors = hamming_distance(*out.best, hard_decision(std::vector<double>(y.begin(), y.end())));
    return out;
}

inline DecodeOutcome decode_isd_dual(std::span<const double> y, const BchCode& code, const CheckRotations& rot,
                                     const SoftDecoderConfig& cfg, const FlipPlan& plan, Rng* tie_rng = nullptr) {
    return decode_isd_soft(y, code, &rot, cfg, plan, tie_rng);
}

/// Check set made of the check polynomial's rotations only.
inline CheckSet check_polynomial_set(const BchCode& code) { return make_check_set(code, {code.check_word()}); }

/// Transmitted codeword and channel output of one soft trial.
struct SoftTrial {
    CyclicWord c;
    std::vector<double> y;
};

inline SoftTrial soft_trial(const BchCode& code, double sigma_sq, std::uint64_t seed, std::uint64_t index) {
    auto mrng = trial_rng(seed, SeedStream::Message, index);
    auto nrng = trial_rng(seed, SeedStream::Noise, index);
    SoftTrial t{random_codeword(code, mrng), {}};
    t.y = awgn_transmit(t.c, sigma_sq, nrng);
    return t;
}

} // namespace bchlab

#endif // BCHLAB_SOFT_SOFT_HPP
