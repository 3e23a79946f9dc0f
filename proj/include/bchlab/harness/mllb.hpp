#ifndef BCHLAB_HARNESS_MLLB_HPP
#define BCHLAB_HARNESS_MLLB_HPP

#include <cmath>
#include <map>
#include <span>
#include <vector>

#include "bchlab/decoders/outcome.hpp"
#include "bchlab/error.hpp"
#include "bchlab/gf2/cyclic_word.hpp"
#include "bchlab/harness/channel.hpp"

namespace bchlab {

/// Word error rate on a BSC(p) from per-weight failure rates p_tau. Weights
/// below the tabulated range count as always decoded, weights above it as
/// always failing.
inline double wer_from_ptau(int n, const std::map<int, double>& ptau, double p) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "length must be positive");
    if (p < 0.0 || p > 1.0) throw Error(ErrorCode::InvalidArgument, "p must lie in [0, 1]");
    for (const auto& [t, v] : ptau)
        if (v < 0.0 || v > 1.0 || t < 0 || t > n) throw Error(ErrorCode::InvalidArgument, "p_tau out of range");
    if (p == 0.0 || p == 1.0) {
        const int t = p == 0.0 ? 0 : n;
        const auto it = ptau.find(t);
        if (it != ptau.end()) return it->second;
        return ptau.empty() || t > ptau.rbegin()->first ? 1.0 : 0.0;
    }
    const long double lp = std::log(static_cast<long double>(p));
    const long double lq = std::log1p(-static_cast<long double>(p));
    const int hi = ptau.empty() ? -1 : ptau.rbegin()->first;
    long double sum = 0.0L;
    for (int t = 0; t <= n; ++t) {
        long double pt;
        if (const auto it = ptau.find(t); it != ptau.end()) pt = it->second;
        else pt = t > hi ? 1.0L : 0.0L;
        if (pt == 0.0L) continue;
        const long double lb = std::lgamma(static_cast<long double>(n + 1)) - std::lgamma(static_cast<long double>(t + 1)) -
                               std::lgamma(static_cast<long double>(n - t + 1));
        sum += pt * std::exp(lb + t * lp + (n - t) * lq);
    }
    return static_cast<double>(sum);
}

/// Contribution of one hard-decision trial to the ML lower bound. A decoder
/// failure is counted as an ML success.
inline double ml_lb_update(const CyclicWord& true_c, const DecodeOutcome& out, int tau, const CyclicWord& received) {
    if (!out.success() || out.list.empty()) return 0.0;
    const int d = hamming_distance(out.list.front(), received);
    for (const auto& c : out.list)
        if (hamming_distance(c, received) != d)
            throw Error(ErrorCode::InconsistentList, "list members lie at different distances from the input");
    if (d > tau) return 0.0;
    if (d < tau) return 1.0;
    const double L = static_cast<double>(out.list.size());
    return out.contains(true_c) ? (L - 1.0) / L : L / (L + 1.0);
}

/// Soft counterpart: the ML decoder certainly errs when the output is a
/// different codeword strictly closer to y than the transmitted one.
inline double ml_lb_soft(const CyclicWord& true_c, const DecodeOutcome& out, std::span<const double> y) {
    if (!out.success() || !out.best || *out.best == true_c) return 0.0;
    double diff = 0.0;  // |y - x(c)|^2 - |y - x(best)|^2
    for (int j = 0; j < true_c.n(); ++j)
        if (out.best->test(j) != true_c.test(j)) {
            const double v = 4.0 * y[static_cast<std::size_t>(j)];
            diff += true_c.test(j) ? v : -v;
        }
    return diff > 0.0 ? 1.0 : diff == 0.0 ? 0.5 : 0.0;
}

} // namespace bchlab

#endif // BCHLAB_HARNESS_MLLB_HPP
