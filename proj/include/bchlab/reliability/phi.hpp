#ifndef BCHLAB_RELIABILITY_PHI_HPP
#define BCHLAB_RELIABILITY_PHI_HPP

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "bchlab/error.hpp"
#include "bchlab/gf2/cyclic_word.hpp"
#include "bchlab/wsearch/check_set.hpp"

namespace bchlab {

/// FNV-1a over the check supports; identifies the check set a Phi vector came from.
inline std::uint64_t check_set_id(const CheckSet& cs) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](std::uint64_t v) {
        h ^= v;
        h *= 0x100000001b3ULL;
    };
    mix(static_cast<std::uint64_t>(cs.n));
    for (const auto& c : cs.checks) {
        bits::for_each_set_bit(c.words(), [&](int j) { mix(static_cast<std::uint64_t>(j)); });
        mix(~0ULL);
    }
    return h;
}

/// Per-position count of unsatisfied shifted checks. Larger means less reliable.
struct PhiVector {
    std::vector<int> counts;
    std::uint64_t checks_id = 0;

    int n() const noexcept { return static_cast<int>(counts.size()); }
    int operator[](int j) const noexcept { return counts[static_cast<std::size_t>(j)]; }
    int max() const { return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end()); }
    bool all_zero() const {
        return std::all_of(counts.begin(), counts.end(), [](int v) { return v == 0; });
    }
    /// Phi of the word rotated by s: result[j] = counts[j - s].
    PhiVector rotated(int s) const {
        PhiVector out{std::vector<int>(counts.size()), checks_id};
        const int nn = n();
        for (int j = 0; j < nn; ++j) out.counts[static_cast<std::size_t>(((j + s) % nn + nn) % nn)] = counts[static_cast<std::size_t>(j)];
        return out;
    }
    friend bool operator==(const PhiVector& a, const PhiVector& b) { return a.counts == b.counts; }
};

namespace detail {

inline std::vector<std::vector<int>> check_supports(const CheckSet& cs) {
    std::vector<std::vector<int>> s;
    s.reserve(cs.checks.size());
    for (const auto& c : cs.checks) s.push_back(c.support());
    return s;
}

// Phi_j += sum over t in supp b of w_{j+t}: every set bit p of w adds one at p - t.
inline void accumulate_phi(std::vector<int>& phi, const CyclicWord& w, std::span<const int> supp, int n) {
    bits::for_each_set_bit(w.words(), [&](int p) {
        for (int t : supp) {
            int j = p - t;
            if (j < 0) j += n;
            ++phi[static_cast<std::size_t>(j)];
        }
    });
}

} // namespace detail

inline PhiVector compute_phi(const CyclicWord& r, const CheckSet& cs) {
    if (r.n() != cs.n)
        throw Error(ErrorCode::LengthMismatch, "word length " + std::to_string(r.n()) + " != check length " + std::to_string(cs.n));
    PhiVector phi{std::vector<int>(static_cast<std::size_t>(cs.n), 0), check_set_id(cs)};
    for (const auto& b : cs.checks) {
        const auto supp = b.support();
        detail::accumulate_phi(phi.counts, cyclic_mul(r, b), supp, cs.n);
    }
    return phi;
}

/// Keeps the products w = r * b for every check so that flipping positions of
/// r updates Phi without recomputing the products.
class PhiState {
public:
    PhiState(const CyclicWord& r, const CheckSet& cs)
        : n_(cs.n), word_(r), supports_(detail::check_supports(cs)) {
        if (r.n() != cs.n) throw Error(ErrorCode::LengthMismatch, "word length does not match checks");
        phi_.checks_id = check_set_id(cs);
        phi_.counts.assign(static_cast<std::size_t>(n_), 0);
        w_.reserve(cs.checks.size());
        for (std::size_t l = 0; l < cs.checks.size(); ++l) {
            w_.push_back(cyclic_mul(r, cs.checks[l]));
            detail::accumulate_phi(phi_.counts, w_.back(), supports_[l], n_);
        }
    }

    const PhiVector& phi() const noexcept { return phi_; }
    const CyclicWord& word() const noexcept { return word_; }
    const std::vector<CyclicWord>& products() const noexcept { return w_; }

    /// True when every check is satisfied by the current word.
    bool satisfied() const {
        return std::all_of(w_.begin(), w_.end(), [](const CyclicWord& w) { return w.is_zero(); });
    }

    void flip(int j) {
        word_.flip(j);
        for (std::size_t l = 0; l < w_.size(); ++l) {
            const auto& supp = supports_[l];
            for (int t : supp) {
                int p = j + t;
                if (p >= n_) p -= n_;
                w_[l].flip(p);
                const int d = w_[l].test(p) ? 1 : -1;
                for (int u : supp) {
                    int i = p - u;
                    if (i < 0) i += n_;
                    phi_.counts[static_cast<std::size_t>(i)] += d;
                }
            }
        }
    }

    void flip(std::span<const int> positions) {
        for (int j : positions) flip(j);
    }

private:
    int n_;
    CyclicWord word_;
    std::vector<std::vector<int>> supports_;
    std::vector<CyclicWord> w_;
    PhiVector phi_;
};

/// Phi of r with the given positions flipped, via incremental updates.
inline PhiVector phi_after_flips(PhiState state, std::span<const int> flips) {
    state.flip(flips);
    return state.phi();
}

/// Bit-flip gain Delta_j = L * weight - 2 Phi_j for a uniform-weight check set.
inline std::vector<int> delta_from_phi(const PhiVector& phi, int L, int delta_perp) {
    std::vector<int> d(phi.counts.size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = L * delta_perp - 2 * phi.counts[j];
    return d;
}

inline std::vector<int> delta_from_phi(const PhiVector& phi, const CheckSet& cs) {
    if (!cs.uniform()) throw Error(ErrorCode::MixedWeights, "checks of differing weight");
    return delta_from_phi(phi, cs.L(), cs.weights.empty() ? 0 : cs.weights.front());
}

} // namespace bchlab

#endif // BCHLAB_RELIABILITY_PHI_HPP
