#ifndef BCHLAB_DECODERS_INFO_SET_HPP
#define BCHLAB_DECODERS_INFO_SET_HPP

#include <limits>
#include <span>
#include <vector>

#include "bchlab/codes/bch_code.hpp"
#include "bchlab/decoders/outcome.hpp"
#include "bchlab/error.hpp"
#include "bchlab/gf2/bits.hpp"
#include "bchlab/gf2/cyclic_word.hpp"

namespace bchlab {

/// Generator matrix reduced on the first k independent columns of a scan
/// order. Row i is the codeword that is 1 on pivot i and 0 on every other pivot.
class InformationSet {
public:
    InformationSet(const BchCode& code, std::span<const int> column_order)
        : n_(code.n()), k_(code.k()), nw_(bits::words_for(static_cast<std::size_t>(code.n()))),
          rows_(static_cast<std::size_t>(k_) * nw_, 0) {
        const auto& src = code.systematic().rows;
        for (int i = 0; i < k_; ++i) {
            const auto w = src[static_cast<std::size_t>(i)].words();
            std::copy(w.begin(), w.end(), rows_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(i) * nw_));
        }
        int r = 0;
        for (int c : column_order) {
            if (r == k_) break;
            if (c < 0 || c >= n_) throw Error(ErrorCode::InvalidArgument, "column index out of range");
            int p = -1;
            for (int i = r; i < k_; ++i)
                if (bits::test(row(i), static_cast<std::size_t>(c))) {
                    p = i;
                    break;
                }
            if (p < 0) continue;
            swap_rows(r, p);
            for (int i = 0; i < k_; ++i)
                if (i != r && bits::test(row(i), static_cast<std::size_t>(c))) bits::xor_into(mrow(i), row(r));
            pivots_.push_back(c);
            ++r;
        }
        if (r < k_) throw Error(ErrorCode::InvalidArgument, "column order does not contain an information set");
    }

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    std::size_t num_words() const noexcept { return nw_; }
    /// Pivot positions in scan order.
    const std::vector<int>& pivots() const noexcept { return pivots_; }
    std::span<const bits::Word> row(int i) const noexcept {
        return {rows_.data() + static_cast<std::size_t>(i) * nw_, nw_};
    }
    CyclicWord row_word(int i) const {
        CyclicWord w(n_);
        std::copy(row(i).begin(), row(i).end(), w.words().begin());
        return w;
    }

    /// The codeword agreeing with r on every pivot.
    CyclicWord encode(const CyclicWord& r) const {
        CyclicWord c(n_);
        for (int i = 0; i < k_; ++i)
            if (r.test(pivots_[static_cast<std::size_t>(i)])) bits::xor_into(c.words(), row(i));
        return c;
    }

    CyclicWord apply(const CyclicWord& base, const std::vector<int>& pattern) const {
        CyclicWord c = base;
        for (int i : pattern) bits::xor_into(c.words(), row(i));
        return c;
    }

private:
    std::span<bits::Word> mrow(int i) noexcept { return {rows_.data() + static_cast<std::size_t>(i) * nw_, nw_}; }
    void swap_rows(int a, int b) noexcept {
        if (a == b) return;
        auto ra = mrow(a), rb = mrow(b);
        for (std::size_t w = 0; w < nw_; ++w) std::swap(ra[w], rb[w]);
    }

    int n_, k_;
    std::size_t nw_;
    std::vector<bits::Word> rows_;
    std::vector<int> pivots_;
};

template <class T>
struct PatternSearchResult {
    T best_cost{};
    std::vector<std::size_t> best_patterns; // plan indices attaining best_cost, in plan order
    long long evaluated = 0;
};

/// Evaluates cost(diff) for diff = base_diff + rows(pattern) over every plan
/// pattern and keeps the minimisers.
template <class T, class Cost>
PatternSearchResult<T> search_patterns(const InformationSet& is, const CyclicWord& base_diff, const FlipPlan& plan,
                                       Cost&& cost) {
    if (plan.k != is.k()) throw Error(ErrorCode::InvalidArgument, "flip plan dimension does not match the code");
    PatternSearchResult<T> res;
    res.best_cost = std::numeric_limits<T>::max();
    std::vector<bits::Word> diff(is.num_words());
    const auto base = base_diff.words();
    for (std::size_t p = 0; p < plan.patterns.size(); ++p) {
        std::copy(base.begin(), base.end(), diff.begin());
        for (int i : plan.patterns[p]) bits::xor_into(diff, is.row(i));
        const T c = cost(std::span<const bits::Word>(diff));
        if (c < res.best_cost) {
            res.best_cost = c;
            res.best_patterns.assign(1, p);
        } else if (c == res.best_cost) {
            res.best_patterns.push_back(p);
        }
    }
    res.evaluated = static_cast<long long>(plan.patterns.size());
    return res;
}

} // namespace bchlab

#endif // BCHLAB_DECODERS_INFO_SET_HPP
