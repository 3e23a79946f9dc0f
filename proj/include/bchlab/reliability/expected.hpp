#ifndef BCHLAB_RELIABILITY_EXPECTED_HPP
#define BCHLAB_RELIABILITY_EXPECTED_HPP

#include <algorithm>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "bchlab/codes/bch_code.hpp"
#include "bchlab/error.hpp"
#include "bchlab/harness/channel.hpp"
#include "bchlab/reliability/phi.hpp"
#include "bchlab/wsearch/check_set.hpp"

namespace bchlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Closed-form expectations of w = e * b and of Phi over all weight-tau errors.
struct ExpectedStats {
    int n = 0, tau = 0, delta_perp = 0, L = 0;
    BigInt W;         // weight-tau errors meeting a fixed delta_perp-window an odd number of times
    BigInt q;         // last term of W
    Rational E_omega; // E[weight(e * b)]
    Rational E_phi_e; // E[Phi_j], j an error position
    Rational E_phi_c; // E[Phi_j], j error free
};

inline ExpectedStats expected_values(int n, int tau, int delta_perp, int L) {
    if (tau < 1 || tau > n) throw Error(ErrorCode::InvalidArgument, "tau must lie in [1, n]");
    if (delta_perp < 1 || delta_perp > n) throw Error(ErrorCode::InvalidArgument, "check weight out of range");
    ExpectedStats s{n, tau, delta_perp, L, 0, 0, 0, 0, 0};
    for (int i = 1; i <= tau; i += 2) s.W += binomial(delta_perp, i) * binomial(n - delta_perp, tau - i);
    s.q = (tau % 2 == 1) ? binomial(delta_perp, tau) * binomial(n - delta_perp, 0)
                         : binomial(delta_perp, tau - 1) * binomial(n - delta_perp, 1);
    s.E_omega = Rational(n * s.W, binomial(n, tau));
    s.E_phi_e = s.E_omega * L / tau;
    if (tau < n) s.E_phi_c = s.E_omega * (delta_perp - 1) * L / (n - tau);
    return s;
}

struct SeparationStats {
    int tau = 0;
    int trials = 0;
    double error_above_all_correct = 1.0; // mean fraction of error positions with Phi > every correct Phi
    double correct_below_all_errors = 1.0; // mean fraction of correct positions with Phi < every error Phi
    double separated_trials = 1.0;         // fraction of trials where the tau largest Phi are exactly the errors
    double avg_phi_error = 0.0;
    double avg_phi_correct = 0.0;
};

inline SeparationStats separation_statistics(const BchCode& code, const CheckSet& cs, int tau, int trials, Rng& rng) {
    if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
    const int n = code.n();
    SeparationStats s;
    s.tau = tau;
    s.trials = trials;
    if (tau == 0 || tau == n) return s;
    double sum_e = 0, sum_c = 0, sep = 0, phi_e = 0, phi_c = 0;
    for (int t = 0; t < trials; ++t) {
        const auto c = random_codeword(code, rng);
        const auto e = sample_error(n, tau, rng);
        const auto phi = compute_phi(c ^ e, cs);
        int min_e = std::numeric_limits<int>::max(), max_c = std::numeric_limits<int>::min();
        for (int j = 0; j < n; ++j) {
            if (e.test(j)) {
                min_e = std::min(min_e, phi[j]);
                phi_e += phi[j];
            } else {
                max_c = std::max(max_c, phi[j]);
                phi_c += phi[j];
            }
        }
        int e_above = 0, c_below = 0;
        for (int j = 0; j < n; ++j) {
            if (e.test(j) && phi[j] > max_c) ++e_above;
            if (!e.test(j) && phi[j] < min_e) ++c_below;
        }
        sum_e += static_cast<double>(e_above) / tau;
        sum_c += static_cast<double>(c_below) / (n - tau);
        if (min_e > max_c) sep += 1;
    }
    s.error_above_all_correct = sum_e / trials;
    s.correct_below_all_errors = sum_c / trials;
    s.separated_trials = sep / trials;
    s.avg_phi_error = phi_e / (static_cast<double>(trials) * tau);
    s.avg_phi_correct = phi_c / (static_cast<double>(trials) * (n - tau));
    return s;
}

} // namespace bchlab

#endif // BCHLAB_RELIABILITY_EXPECTED_HPP
