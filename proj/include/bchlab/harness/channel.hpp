#ifndef BCHLAB_HARNESS_CHANNEL_HPP
#define BCHLAB_HARNESS_CHANNEL_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "bchlab/codes/bch_code.hpp"
#include "bchlab/error.hpp"
#include "bchlab/gf2/cyclic_word.hpp"

namespace bchlab {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Independent seed for (stream, index) under a campaign seed; counter based,
/// so a trial's randomness does not depend on which worker runs it.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) noexcept {
    std::uint64_t s = base;
    const std::uint64_t a = splitmix64(s);
    s = a ^ (stream * 0xd1b54a32d192ed03ULL);
    const std::uint64_t b = splitmix64(s);
    s = b ^ (index * 0x8cb92ba72f3d8dd7ULL);
    return splitmix64(s);
}

enum class SeedStream : std::uint64_t { Message = 1, Noise = 2, Decoder = 3 };

inline Rng trial_rng(std::uint64_t base, SeedStream stream, std::uint64_t index) {
    return Rng(derive_seed(base, static_cast<std::uint64_t>(stream), index));
}

/// Uniformly random word of weight tau.
inline CyclicWord sample_error(int n, int tau, Rng& rng) {
    if (tau < 0 || tau > n) throw Error(ErrorCode::InvalidArgument, "error weight out of range");
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    CyclicWord e(n);
    for (int i = 0; i < tau; ++i) {
        std::uniform_int_distribution<int> pick(i, n - 1);
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick(rng))]);
        e.set(idx[static_cast<std::size_t>(i)]);
    }
    return e;
}

inline CyclicWord random_codeword(const BchCode& code, Rng& rng) {
    std::vector<int> info(static_cast<std::size_t>(code.k()));
    std::bernoulli_distribution coin(0.5);
    for (auto& b : info) b = coin(rng) ? 1 : 0;
    return code.encode_systematic(info);
}

/// sigma^2 of the BPSK/AWGN channel for a given Eb/N0 and code rate.
inline double awgn_sigma_sq(double ebn0_db, double rate) {
    if (!(rate > 0.0) || rate > 1.0) throw Error(ErrorCode::InvalidArgument, "code rate must lie in (0, 1]");
    const double esn0_db = ebn0_db - 10.0 * std::log10(1.0 / rate);
    return 1.0 / (2.0 * std::pow(10.0, esn0_db / 10.0));
}

enum class ChannelKind { Bsc, Awgn };

struct ChannelConfig {
    ChannelKind kind = ChannelKind::Bsc;
    double p = 0.0;         // BSC crossover (for WER(p) reporting)
    double ebn0_db = 0.0;   // AWGN
    double rate = 1.0;
    std::uint64_t seed = 1;

    static ChannelConfig bsc(double p, double rate, std::uint64_t seed) {
        return {ChannelKind::Bsc, p, 0.0, rate, seed};
    }
    static ChannelConfig awgn(double ebn0_db, double rate, std::uint64_t seed) {
        return {ChannelKind::Awgn, 0.0, ebn0_db, rate, seed};
    }
    double esn0_db() const { return ebn0_db - 10.0 * std::log10(1.0 / rate); }
    double sigma_sq() const { return awgn_sigma_sq(ebn0_db, rate); }
};

/// Bit 0 maps to +1, bit 1 to -1.
inline std::vector<double> bpsk(const CyclicWord& c) {
    std::vector<double> x(static_cast<std::size_t>(c.n()));
    for (int j = 0; j < c.n(); ++j) x[static_cast<std::size_t>(j)] = c.test(j) ? -1.0 : 1.0;
    return x;
}

inline std::vector<double> awgn_transmit(const CyclicWord& c, double sigma_sq, Rng& rng) {
    auto y = bpsk(c);
    std::normal_distribution<double> noise(0.0, std::sqrt(sigma_sq));
    for (auto& v : y) v += noise(rng);
    return y;
}

inline CyclicWord hard_decision(const std::vector<double>& y) {
    CyclicWord r(static_cast<int>(y.size()));
    for (std::size_t j = 0; j < y.size(); ++j)
        if (y[j] < 0.0) r.set(static_cast<int>(j));
    return r;
}

} // namespace bchlab

#endif // BCHLAB_HARNESS_CHANNEL_HPP
