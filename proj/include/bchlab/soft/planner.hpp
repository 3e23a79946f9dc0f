#ifndef BCHLAB_SOFT_PLANNER_HPP
#define BCHLAB_SOFT_PLANNER_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bchlab/decoders/info_set.hpp"
#include "bchlab/decoders/outcome.hpp"
#include "bchlab/error.hpp"
#include "bchlab/soft/soft.hpp"

namespace bchlab {

/// Empirical distribution of (tau, ell): tau erroneous information-set
/// positions, the most reliable of them at rank ell (0 = most reliable).
/// Error-free trials are counted in `trials` only.
struct AMatrix {
    int k = 0;
    long long trials = 0;
    std::map<std::pair<int, int>, long long> counts;

    std::string code;
    std::uint64_t checks_id = 0;
    double ebn0_db = 0.0;
    double alpha = 0.0;
    std::optional<int> T;

    double a(int tau, int ell) const {
        const auto it = counts.find({tau, ell});
        return it == counts.end() || trials == 0 ? 0.0 : static_cast<double>(it->second) / static_cast<double>(trials);
    }
    long long row_count(int tau) const {
        long long s = 0;
        for (const auto& [cell, c] : counts)
            if (cell.first == tau) s += c;
        return s;
    }
    double row_sum(int tau) const { return trials ? static_cast<double>(row_count(tau)) / static_cast<double>(trials) : 0.0; }
    long long total_count() const {
        long long s = 0;
        for (const auto& [cell, c] : counts) s += c;
        return s;
    }
    double total_mass() const { return trials ? static_cast<double>(total_count()) / static_cast<double>(trials) : 0.0; }
    int max_tau() const {
        int t = 0;
        for (const auto& [cell, c] : counts) t = std::max(t, cell.first);
        return t;
    }
    void add(int tau, int ell) {
        ++trials;
        if (tau > 0) ++counts[{tau, ell}];
    }
};

/// (tau, ell) of one decoding input; ell = -1 when tau = 0.
inline std::pair<int, int> info_set_errors(const InformationSet& is, const CyclicWord& decisions, const CyclicWord& c) {
    int tau = 0, ell = -1;
    for (int i = 0; i < is.k(); ++i) {
        const int p = is.pivots()[static_cast<std::size_t>(i)];
        if (decisions.test(p) != c.test(p)) {
            if (tau++ == 0) ell = i;
        }
    }
    return {tau, ell};
}

/// Trial i uses the same codeword and noise as soft_trial(code, sigma^2, seed, i).
inline AMatrix simulate_A(const BchCode& code, const CheckRotations* rot, double ebn0_db, SoftDecoderConfig cfg,
                          long long trials, std::uint64_t seed) {
    if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
    cfg.sigma_sq = awgn_sigma_sq(ebn0_db, static_cast<double>(code.k()) / code.n());
    AMatrix A;
    A.k = code.k();
    A.code = code.name();
    A.ebn0_db = ebn0_db;
    A.alpha = cfg.alpha;
    A.T = cfg.T;
    for (long long i = 0; i < trials; ++i) {
        const auto t = soft_trial(code, cfg.sigma_sq, seed, static_cast<std::uint64_t>(i));
        const auto L = combined_reliability(t.y, rot, cfg);
        const InformationSet is(code, soft_order(L, t.y));
        const auto [tau, ell] = info_set_errors(is, L.hard(), t.c);
        A.add(tau, ell);
    }
    return A;
}

inline nlohmann::json a_matrix_to_json(const AMatrix& A) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& [cell, c] : A.counts) cells.push_back({cell.first, cell.second, c});
    nlohmann::json j{{"k", A.k}, {"trials", A.trials}, {"code", A.code}, {"checks_id", A.checks_id},
                     {"ebn0_db", A.ebn0_db}, {"alpha", A.alpha}, {"cells", cells}};
    j["T"] = A.T ? nlohmann::json(*A.T) : nlohmann::json(nullptr);
    return j;
}

inline AMatrix a_matrix_from_json(const nlohmann::json& j) {
    AMatrix A;
    try {
        A.k = j.at("k").get<int>();
        A.trials = j.at("trials").get<long long>();
        A.code = j.value("code", std::string{});
        A.checks_id = j.value("checks_id", std::uint64_t{0});
        A.ebn0_db = j.value("ebn0_db", 0.0);
        A.alpha = j.value("alpha", 0.0);
        if (j.contains("T") && !j.at("T").is_null()) A.T = j.at("T").get<int>();
        for (const auto& c : j.at("cells")) {
            const int tau = c.at(0).get<int>(), ell = c.at(1).get<int>();
            if (tau < 1 || ell < 0 || ell > A.k - tau) throw Error(ErrorCode::Parse, "A-matrix cell out of range");
            A.counts[{tau, ell}] = c.at(2).get<long long>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("A-matrix: ") + e.what());
    }
    if (A.total_count() > A.trials) throw Error(ErrorCode::Parse, "A-matrix cells exceed the trial count");
    return A;
}

struct PlannedFlips {
    FlipPlan plan;
    double wer_est = 0.0;   // mass of uncovered cells
    long long covered = 0;  // trials covered by the plan
};

namespace detail {

// C(s, w), or cap + 1 once it exceeds cap
inline long long binomial_capped(int s, int w, long long cap) {
    if (w > s) return cap + 1;
    w = std::min(w, s - w);  // keeps the partial products increasing
    __int128 r = 1;
    for (int i = 0; i < w; ++i) {
        r = r * (s - i) / (i + 1);
        if (r > cap) return cap + 1;
    }
    return static_cast<long long>(r);
}

} // namespace detail

/// Tail families maximising the covered mass with at most `budget` patterns,
/// the zero pattern included. Family (w, s) flips w of the s least reliable
/// information positions and covers every cell (w, ell >= k - s). Solved
/// exactly as a multiple-choice knapsack; among optimal plans the cheapest wins.
/// With `fill`, leftover budget then lengthens the tails of the lightest
/// families (observed weights only), which keeps the plan optimal.
inline PlannedFlips plan_flips(const AMatrix& A, long long budget, bool fill = true) {
    if (budget < 1) throw Error(ErrorCode::InvalidArgument, "flip budget must be at least 1");
    const long long B = budget - 1;
    const int k = A.k;
    const int W = A.max_tau();
    if (B > 50'000'000) throw Error(ErrorCode::InvalidArgument, "flip budget too large for the planner");

    const auto nb = static_cast<std::size_t>(B + 1);
    std::vector<long long> dp(nb, 0);
    std::vector<std::vector<int>> choice(static_cast<std::size_t>(W + 1));
    for (int w = 1; w <= W; ++w) {
        // options: smallest tail reaching each occupied rank, with cumulative coverage
        std::vector<std::pair<int, long long>> opts;  // (tail, covered)
        long long cov = 0;
        for (int ell = k - 1; ell >= 0; --ell) {
            const auto it = A.counts.find({w, ell});
            if (it == A.counts.end() || it->second == 0) continue;
            cov += it->second;
            opts.emplace_back(k - ell, cov);
        }
        auto& ch = choice[static_cast<std::size_t>(w)];
        ch.assign(nb, 0);
        if (opts.empty()) continue;
        std::vector<long long> next = dp;
        for (const auto& [s, c] : opts) {
            const long long cost = detail::binomial_capped(s, w, B);
            if (cost > B) break;
            for (long long b = cost; b <= B; ++b) {
                const long long v = dp[static_cast<std::size_t>(b - cost)] + c;
                if (v > next[static_cast<std::size_t>(b)]) {
                    next[static_cast<std::size_t>(b)] = v;
                    ch[static_cast<std::size_t>(b)] = s;
                }
            }
        }
        dp = std::move(next);
    }

    long long b = B;
    while (b > 0 && dp[static_cast<std::size_t>(b - 1)] == dp[static_cast<std::size_t>(B)]) --b;
    PlannedFlips res;
    res.covered = dp[static_cast<std::size_t>(B)];
    std::vector<FlipFamily> fams;
    for (int w = W; w >= 1; --w) {
        const int s = choice[static_cast<std::size_t>(w)][static_cast<std::size_t>(b)];
        if (s == 0) continue;
        fams.push_back({w, s});
        b -= detail::binomial_capped(s, w, B);
    }
    std::reverse(fams.begin(), fams.end());
    if (fill) {
        std::vector<int> tail(static_cast<std::size_t>(W + 1), 0);
        long long used = 0;
        for (const auto& f : fams) {
            tail[static_cast<std::size_t>(f.weight)] = f.tail;
            used += detail::binomial_capped(f.tail, f.weight, B);
        }
        long long left = B - used;
        for (int w = 1; w <= W; ++w) {
            auto& s = tail[static_cast<std::size_t>(w)];
            s = std::max(s, w - 1);
            // s -> s + 1 adds C(s, w - 1) patterns
            while (s < k) {
                const long long inc = detail::binomial_capped(s, w - 1, B);
                if (inc > left) break;
                left -= inc;
                ++s;
            }
        }
        fams.clear();
        for (int w = 1; w <= W; ++w)
            if (tail[static_cast<std::size_t>(w)] >= w) fams.push_back({w, tail[static_cast<std::size_t>(w)]});
    }
    res.plan = make_flip_plan_from_families(k, std::move(fams));
    res.wer_est = A.trials ? static_cast<double>(A.total_count() - res.covered) / static_cast<double>(A.trials) : 0.0;
    return res;
}

} // namespace bchlab

#endif // BCHLAB_SOFT_PLANNER_HPP
