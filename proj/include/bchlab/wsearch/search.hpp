#ifndef BCHLAB_WSEARCH_SEARCH_HPP
#define BCHLAB_WSEARCH_SEARCH_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <optional>
#include <set>
#include <span>
#include <thread>
#include <unordered_set>
#include <vector>

#include "bchlab/codes/bch_code.hpp"
#include "bchlab/gf2/bits.hpp"
#include "bchlab/gf2/cyclic_word.hpp"
#include "bchlab/gf2/matrix.hpp"

namespace bchlab {

struct SearchOptions {
    std::uint64_t budget = 0;       // max candidates enumerated, 0 = unlimited
    int workers = 1;
    std::size_t max_witnesses = 32;
};

struct WeightSearchReport {
    int min_weight = 0;
    std::vector<CyclicWord> witnesses; // first few orbit representatives of weight min_weight
    std::vector<CyclicWord> orbits;    // all orbits of weight min_weight seen (complete when exhaustive)
    bool exhaustive = false;
    std::uint64_t effort = 0;          // candidates enumerated
    int window_weight = 0;             // deepest completed enumeration level
};

/// Orbit representative: among the rotations with bit 0 set, the smallest in
/// lexicographic order of b0 b1 ... b(n-1).
inline CyclicWord orbit_representative(const CyclicWord& w) {
    if (w.is_zero()) throw Error(ErrorCode::ZeroWord, "zero word has no orbit representative");
    std::optional<CyclicWord> best;
    bits::for_each_set_bit(w.words(), [&](int s) {
        CyclicWord r = w.rotated(-s);
        if (!best || lex_less(r, *best)) best = std::move(r);
    });
    return *best;
}

/// One representative per rotation orbit, sorted by (weight, lex order).
inline std::vector<CyclicWord> cyclic_orbit_reps(const std::vector<CyclicWord>& words) {
    std::unordered_set<CyclicWord, CyclicWordHash> seen;
    for (const auto& w : words) {
        if (!words.empty()) words.front().check_same(w);
        seen.insert(orbit_representative(w));
    }
    std::vector<CyclicWord> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [](const CyclicWord& a, const CyclicWord& b) {
        const int wa = a.weight(), wb = b.weight();
        return wa != wb ? wa < wb : lex_less(a, b);
    });
    return out;
}

namespace detail {

/// Enumerates info vectors over the systematic window (positions n-k .. n-1)
/// level by level. Worker i owns the subsets whose lowest index is = i mod
/// workers and a fixed share of the budget, so results never depend on timing.
class WindowEnumerator {
public:
    WindowEnumerator(const BchCode& code, const SearchOptions& opt)
        : WindowEnumerator(code.n(), code.systematic().rows, opt) {}

    /// Enumerates sums of the given rows (any basis that is systematic somewhere).
    WindowEnumerator(int n, const std::vector<CyclicWord>& rows, const SearchOptions& opt)
        : n_(n), k_(static_cast<int>(rows.size())), nw_(bits::words_for(static_cast<std::size_t>(n))),
          workers_(std::max(1, opt.workers)) {
        rows_.reserve(static_cast<std::size_t>(k_) * nw_);
        for (const auto& r : rows)
            for (auto w : r.words()) rows_.push_back(w);
        share_ = opt.budget == 0 ? std::numeric_limits<std::uint64_t>::max()
                                 : std::max<std::uint64_t>(1, opt.budget / static_cast<std::uint64_t>(workers_));
        spent_.assign(static_cast<std::size_t>(workers_), 0);
    }

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    int workers() const noexcept { return workers_; }
    bool exhausted() const noexcept { return exhausted_; }
    std::uint64_t effort() const noexcept {
        std::uint64_t s = 0;
        for (auto v : spent_) s += v;
        return s;
    }

    /// Calls visit(worker, words, weight) for every info vector of weight t.
    /// Returns false if some worker ran out of budget during this level.
    template <class Visit>
    bool run_level(int t, Visit&& visit) {
        if (t < 1 || t > k_ || exhausted_) return !exhausted_;
        std::vector<char> cut(static_cast<std::size_t>(workers_), 0);
        auto job = [&](int wid) {
            switch (nw_) {
            case 1: cut[static_cast<std::size_t>(wid)] = !level<1>(wid, t, visit); break;
            case 2: cut[static_cast<std::size_t>(wid)] = !level<2>(wid, t, visit); break;
            case 4: cut[static_cast<std::size_t>(wid)] = !level<4>(wid, t, visit); break;
            default: cut[static_cast<std::size_t>(wid)] = !level<0>(wid, t, visit); break;
            }
        };
        if (workers_ == 1) {
            job(0);
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < workers_; ++w) pool.emplace_back(job, w);
            for (auto& th : pool) th.join();
        }
        exhausted_ = std::any_of(cut.begin(), cut.end(), [](char c) { return c != 0; });
        return !exhausted_;
    }

private:
    template <std::size_t NW, class Visit>
    bool level(int wid, int t, Visit& visit) {
        const std::size_t nw = NW ? NW : nw_;
        std::vector<bits::Word> acc(static_cast<std::size_t>(t + 1) * nw, 0);
        std::vector<int> idx(static_cast<std::size_t>(t), 0);
        std::uint64_t& spent = spent_[static_cast<std::size_t>(wid)];
        for (int i0 = wid; i0 <= k_ - t; i0 += workers_) {
            // depth-first over increasing index tuples with first index i0
            int d = 0;
            idx[0] = i0;
            for (;;) {
                const bits::Word* prev = acc.data() + static_cast<std::size_t>(d) * nw;
                bits::Word* cur = acc.data() + static_cast<std::size_t>(d + 1) * nw;
                const bits::Word* row = rows_.data() + static_cast<std::size_t>(idx[static_cast<std::size_t>(d)]) * nw;
                for (std::size_t w = 0; w < nw; ++w) cur[w] = prev[w] ^ row[w];
                if (d + 1 == t) {
                    if (spent >= share_) return false;
                    ++spent;
                    int wt = 0;
                    for (std::size_t w = 0; w < nw; ++w) wt += std::popcount(cur[w]);
                    visit(wid, std::span<const bits::Word>(cur, nw), wt);
                    // advance the deepest index, backtracking as needed
                    while (d >= 1) {
                        int& v = idx[static_cast<std::size_t>(d)];
                        if (v + 1 <= k_ - (t - d)) {
                            ++v;
                            break;
                        }
                        --d;
                    }
                    if (d == 0) break;
                } else {
                    ++d;
                    idx[static_cast<std::size_t>(d)] = idx[static_cast<std::size_t>(d - 1)] + 1;
                }
            }
        }
        return true;
    }

    int n_;
    int k_;
    std::size_t nw_;
    int workers_;
    std::vector<bits::Word> rows_;
    std::uint64_t share_ = 0;
    std::vector<std::uint64_t> spent_;
    bool exhausted_ = false;
};

inline CyclicWord word_from_span(int n, std::span<const bits::Word> w) {
    CyclicWord c(n);
    std::copy(w.begin(), w.end(), c.words().begin());
    return c;
}

} // namespace detail

/// Minimum nonzero weight of the code. Every codeword of weight W has a
/// rotation with at most floor(W k / n) ones on the systematic window, so once
/// all window weights <= t are enumerated and best * k < (t + 1) * n, no
/// lighter codeword can exist, and every orbit of weight best has been seen.
inline WeightSearchReport min_weight_search(const BchCode& code, const SearchOptions& opt = {}) {
    WeightSearchReport rep;
    const int n = code.n(), k = code.k();
    if (k == 0) {
        rep.exhaustive = true;
        return rep;
    }
    detail::WindowEnumerator en(code, opt);
    const int W = en.workers();
    std::vector<int> best(static_cast<std::size_t>(W), std::numeric_limits<int>::max());
    std::vector<std::unordered_set<CyclicWord, CyclicWordHash>> hits(static_cast<std::size_t>(W));
    for (int t = 1; t <= k; ++t) {
        const bool complete = en.run_level(t, [&](int wid, std::span<const bits::Word> w, int wt) {
            auto& b = best[static_cast<std::size_t>(wid)];
            if (wt > b) return;
            auto& h = hits[static_cast<std::size_t>(wid)];
            if (wt < b) {
                b = wt;
                h.clear();
            }
            h.insert(orbit_representative(detail::word_from_span(n, w)));
        });
        if (!complete) break;
        rep.window_weight = t;
        const int cur = *std::min_element(best.begin(), best.end());
        if (t == k || static_cast<long long>(cur) * k < static_cast<long long>(t + 1) * n) {
            rep.exhaustive = true;
            break;
        }
    }
    rep.min_weight = *std::min_element(best.begin(), best.end());
    std::vector<CyclicWord> all;
    for (int w = 0; w < W; ++w)
        if (best[static_cast<std::size_t>(w)] == rep.min_weight)
            all.insert(all.end(), hits[static_cast<std::size_t>(w)].begin(), hits[static_cast<std::size_t>(w)].end());
    rep.orbits = cyclic_orbit_reps(all);
    rep.witnesses.assign(rep.orbits.begin(), rep.orbits.begin() + static_cast<std::ptrdiff_t>(std::min(rep.orbits.size(), opt.max_witnesses)));
    rep.effort = en.effort();
    return rep;
}

struct OrbitCensus {
    std::map<int, std::vector<CyclicWord>> by_weight; // weight -> sorted orbit representatives
    int max_weight = 0;
    bool exhaustive = false;
    std::uint64_t effort = 0;
};

/// All rotation orbits of codewords with weight in [min_weight, max_weight].
inline OrbitCensus enumerate_orbits(const BchCode& code, int min_weight, int max_weight, const SearchOptions& opt = {}) {
    OrbitCensus out;
    out.max_weight = max_weight;
    const int n = code.n(), k = code.k();
    if (k == 0 || max_weight < 1) {
        out.exhaustive = true;
        return out;
    }
    const int depth = std::min(k, static_cast<int>(static_cast<long long>(max_weight) * k / n));
    detail::WindowEnumerator en(code, opt);
    std::vector<std::unordered_set<CyclicWord, CyclicWordHash>> found(static_cast<std::size_t>(en.workers()));
    bool complete = true;
    for (int t = 1; t <= depth && complete; ++t)
        complete = en.run_level(t, [&](int wid, std::span<const bits::Word> w, int wt) {
            if (wt < min_weight || wt > max_weight) return;
            found[static_cast<std::size_t>(wid)].insert(orbit_representative(detail::word_from_span(n, w)));
        });
    std::vector<CyclicWord> all;
    for (auto& s : found) all.insert(all.end(), s.begin(), s.end());
    for (auto& r : cyclic_orbit_reps(all)) out.by_weight[r.weight()].push_back(std::move(r));
    out.exhaustive = complete;
    out.effort = en.effort();
    return out;
}

struct IsdSearchOptions {
    int p = 4;                          // max weight on the random information set
    std::uint64_t max_iterations = 2000;
    int stall = 60;                     // stop after this many iterations without a new orbit
    std::uint64_t seed = 1;
};

/// Probabilistic orbit search: repeatedly bring the generator matrix to
/// systematic form on a random information set and enumerate all combinations
/// of at most p rows. Collects orbits of weight <= max_weight, or, when
/// max_weight is 0, the orbits of the lightest weight seen so far.
/// The result is never certified (exhaustive = false).
inline OrbitCensus random_isd_orbits(const BchCode& code, int max_weight, const IsdSearchOptions& opt = {}) {
    OrbitCensus out;
    const int n = code.n(), k = code.k();
    if (k == 0) return out;
    std::mt19937_64 rng(opt.seed);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    const BitMatrix G0 = code.cyclic_generator_matrix();
    std::unordered_set<CyclicWord, CyclicWordHash> found;
    int cap = max_weight > 0 ? max_weight : n;
    int stall = 0;
    SearchOptions so;
    for (std::uint64_t it = 0; it < opt.max_iterations && stall < opt.stall; ++it) {
        std::shuffle(perm.begin(), perm.end(), rng);
        BitMatrix G = G0;
        G.rref(perm);
        std::vector<CyclicWord> rows;
        rows.reserve(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
            CyclicWord r(n);
            auto src = G.row(i);
            std::copy(src.begin(), src.end(), r.words().begin());
            rows.push_back(std::move(r));
        }
        detail::WindowEnumerator en(n, rows, so);
        const std::size_t before = found.size();
        const int cap_before = cap;
        for (int t = 1; t <= std::min(opt.p, k); ++t)
            en.run_level(t, [&](int, std::span<const bits::Word> w, int wt) {
                if (wt > cap) return;
                if (max_weight == 0 && wt < cap) {
                    cap = wt;
                    found.clear();
                }
                found.insert(orbit_representative(detail::word_from_span(n, w)));
            });
        out.effort += en.effort();
        stall = (found.size() > before || cap < cap_before) ? 0 : stall + 1;
    }
    for (auto& r : cyclic_orbit_reps({found.begin(), found.end()})) out.by_weight[r.weight()].push_back(std::move(r));
    out.max_weight = cap;
    out.exhaustive = false;
    return out;
}

} // namespace bchlab

#endif // BCHLAB_WSEARCH_SEARCH_HPP
