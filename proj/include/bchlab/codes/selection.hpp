#ifndef BCHLAB_CODES_SELECTION_HPP
#define BCHLAB_CODES_SELECTION_HPP

#include <algorithm>
#include <vector>

#include "bchlab/codes/cosets.hpp"
#include "bchlab/error.hpp"

namespace bchlab {

/// Leader subsets whose cosets hold exactly n - k exponents, i.e. every
/// cyclic code of dimension k built from whole cosets.
class SelectionEnumerator {
public:
    SelectionEnumerator(const CosetTable& t, int k) : t_(&t), target_(t.n - k) {
        if (k < 0 || k > t.n) throw Error(ErrorCode::InvalidArgument, "dimension out of range");
        for (int l : t.leaders) sizes_.push_back(static_cast<int>(t.members(l).size()));
        // ways_[i][s]: subsets of leaders i.. with total size s
        const std::size_t L = sizes_.size();
        ways_.assign(L + 1, std::vector<long long>(static_cast<std::size_t>(target_) + 1, 0));
        ways_[L][0] = 1;
        for (std::size_t i = L; i-- > 0;)
            for (int s = 0; s <= target_; ++s) {
                long long w = ways_[i + 1][static_cast<std::size_t>(s)];
                if (s >= sizes_[i]) w += ways_[i + 1][static_cast<std::size_t>(s - sizes_[i])];
                ways_[i][static_cast<std::size_t>(s)] = w;
            }
    }

    long long count() const noexcept { return ways_[0][static_cast<std::size_t>(target_)]; }

    /// f(leaders) for every selection, in lexicographic order of the leader lists.
    template <class F>
    void for_each(F&& f) const {
        std::vector<int> cur;
        walk(0, target_, cur, f);
    }

private:
    template <class F>
    void walk(std::size_t i, int left, std::vector<int>& cur, F& f) const {
        if (left == 0) {
            f(static_cast<const std::vector<int>&>(cur));
            return;
        }
        if (i == sizes_.size() || ways_[i][static_cast<std::size_t>(left)] == 0) return;
        if (sizes_[i] <= left && ways_[i + 1][static_cast<std::size_t>(left - sizes_[i])] > 0) {
            cur.push_back(t_->leaders[i]);
            walk(i + 1, left - sizes_[i], cur, f);
            cur.pop_back();
        }
        walk(i + 1, left, cur, f);
    }

    const CosetTable* t_;
    int target_;
    std::vector<int> sizes_;
    std::vector<std::vector<long long>> ways_;
};

} // namespace bchlab

#endif // BCHLAB_CODES_SELECTION_HPP
