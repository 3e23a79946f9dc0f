#include <gtest/gtest.h>

#include <random>

#include "bchlab/reliability/expected.hpp"
#include "bchlab/reliability/phi.hpp"
#include "oracles.hpp"

using namespace bchlab;

namespace {

BchCode bch15() { return BchCode::from_cosets(BinaryField(4, 0x13), {1, 3}); }
BchCode bch63_24() { return BchCode::from_cosets(BinaryField(6), {1, 3, 5, 7, 9, 11, 13}); }

const CyclicWord& example_b() {
    static const CyclicWord b = CyclicWord::from_exponents(15, {11, 3, 2, 0});
    return b;
}

const CyclicWord& example_r() {
    static const CyclicWord r = CyclicWord::from_exponents(15, {7, 6, 5, 3, 2, 0});
    return r;
}

std::vector<std::vector<int>> supports(const CheckSet& cs) {
    std::vector<std::vector<int>> s;
    for (const auto& c : cs.checks) s.push_back(c.support());
    return s;
}

} // namespace

TEST(Phi, WorkedExample) {
    const auto code = bch15();
    EXPECT_EQ(cyclic_mul(example_r(), example_b()), CyclicWord::from_exponents(15, {14, 13, 11, 10, 5, 4, 3, 2, 1, 0}));
    const std::vector<int> expected{4, 3, 4, 3, 2, 2, 1, 2, 3, 2, 2, 3, 2, 3, 4};
    EXPECT_EQ(compute_phi(example_r(), make_check_set(code, {example_b()})).counts, expected);
    // the mined check is a different rotation of the same orbit
    const auto cs = build_check_set(code);
    ASSERT_EQ(cs.L(), 1);
    EXPECT_EQ(compute_phi(example_r(), cs).counts, expected);
}

TEST(Phi, CodewordsGiveZero) {
    const auto code = BchCode::from_cosets(BinaryField(6), {1, 3, 5, 9, 13, 21, 27});
    const auto cs = build_check_set(code);
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        const auto phi = compute_phi(random_codeword(code, rng), cs);
        EXPECT_TRUE(phi.all_zero());
    }
}

TEST(Phi, MatchesParityCheckOracle) {
    std::mt19937_64 rng(11);
    for (auto code : {bch15(), bch63_24(), BchCode::from_cosets(BinaryField(5), {1, 5})}) {
        const auto cs = build_check_set(code);
        for (int t = 0; t < 10; ++t) {
            const auto r = oracle::random_bits(code.n(), rng);
            EXPECT_EQ(compute_phi(oracle::from_bits(r), cs).counts, oracle::phi_by_parity_checks(r, supports(cs)));
        }
    }
}

TEST(Phi, LengthMismatch) {
    const auto cs = build_check_set(bch15());
    try {
        (void)compute_phi(CyclicWord(31), cs);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
    }
}

TEST(Phi, RotationCovarianceAndErrorDependence) {
    const auto code = bch63_24();
    const auto cs = build_check_set(code);
    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        const auto e = sample_error(code.n(), 1 + t, rng);
        const auto phi = compute_phi(e, cs);
        EXPECT_EQ(compute_phi(e ^ random_codeword(code, rng), cs), phi);
        for (int s : {1, 7, 62}) EXPECT_EQ(compute_phi(e.rotated(s), cs), phi.rotated(s));
    }
}

TEST(Phi, IdentifiesCheckSet) {
    const auto a = build_check_set(bch63_24());
    const auto b = build_check_set(BchCode::from_cosets(BinaryField(6), {1, 3, 5, 9, 13, 21, 27}));
    EXPECT_EQ(compute_phi(CyclicWord(63), a).checks_id, check_set_id(a));
    EXPECT_NE(check_set_id(a), check_set_id(b));
}

TEST(PhiState, FlipUpdatesMatchRecomputation) {
    const auto code = bch15();
    const auto cs = build_check_set(code);
    PhiState st(example_r(), cs);
    EXPECT_EQ(st.phi(), compute_phi(example_r(), cs));
    st.flip(6);
    auto flipped = example_r();
    flipped.flip(6);
    EXPECT_EQ(st.phi(), compute_phi(flipped, cs));
    st.flip(6);
    EXPECT_EQ(st.phi(), compute_phi(example_r(), cs));
}

TEST(PhiState, RandomFlipSequences) {
    const auto code = bch63_24();
    const auto cs = build_check_set(code);
    std::mt19937_64 rng(8);
    auto r = oracle::random_word(63, rng);
    PhiState st(r, cs);
    for (int t = 0; t < 40; ++t) {
        const int j = static_cast<int>(rng() % 63);
        st.flip(j);
        r.flip(j);
        ASSERT_EQ(st.phi(), compute_phi(r, cs));
        ASSERT_EQ(st.word(), r);
    }
}

TEST(PhiState, FlippingAllErrorsClearsPhi) {
    const auto code = bch63_24();
    const auto cs = build_check_set(code);
    Rng rng(9);
    const auto e = sample_error(63, 9, rng);
    const auto supp = e.support();
    const auto phi = phi_after_flips(PhiState(random_codeword(code, rng) ^ e, cs), supp);
    EXPECT_TRUE(phi.all_zero());
    PhiState st(e, cs);
    EXPECT_FALSE(st.satisfied());
    st.flip(supp);
    EXPECT_TRUE(st.satisfied());
}

TEST(Delta, Lemma) {
    const auto code = bch15();
    const auto cs = build_check_set(code);
    const auto zero = compute_phi(CyclicWord(15), cs);
    for (int d : delta_from_phi(zero, cs)) EXPECT_EQ(d, 4);
    EXPECT_EQ(delta_from_phi(compute_phi(example_r(), cs), 1, 4)[6], 2);
}

TEST(Delta, MatchesWeightDifferenceOracle) {
    std::mt19937_64 rng(12);
    for (auto code : {bch15(), bch63_24()}) {
        const auto cs = build_check_set(code);
        ASSERT_TRUE(cs.uniform());
        std::vector<oracle::Bits> checks;
        for (const auto& c : cs.checks) checks.push_back(oracle::to_bits(c));
        for (int t = 0; t < 3; ++t) {
            const auto r = oracle::random_bits(code.n(), rng);
            EXPECT_EQ(delta_from_phi(compute_phi(oracle::from_bits(r), cs), cs), oracle::delta_by_weights(r, checks));
        }
    }
}

TEST(Delta, MixedWeightsRefused) {
    const auto code = BchCode::from_cosets(BinaryField(6), {3, 5, 7, 9, 11, 13, 15, 21});
    const auto cs = build_check_set(code);
    ASSERT_FALSE(cs.uniform());
    try {
        (void)delta_from_phi(compute_phi(CyclicWord(63), cs), cs);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MixedWeights);
    }
}

TEST(Expected, SingleError) {
    for (int dp : {4, 8, 22}) {
        const auto s = expected_values(63, 1, dp, 35);
        EXPECT_EQ(s.W, dp);
        EXPECT_EQ(s.E_omega, Rational(dp));
        EXPECT_EQ(s.E_phi_e, Rational(dp * 35));
    }
}

TEST(Expected, OmegaMatchesExhaustiveErrorSum) {
    const int n = 15;
    const auto b = oracle::to_bits(example_b());
    for (int tau = 1; tau <= 3; ++tau) {
        long long total = 0, count = 0;
        for (int mask = 0; mask < (1 << n); ++mask) {
            if (__builtin_popcount(static_cast<unsigned>(mask)) != tau) continue;
            oracle::Bits e(n);
            for (int j = 0; j < n; ++j) e[static_cast<std::size_t>(j)] = mask >> j & 1;
            total += oracle::weight(oracle::mul_mod(e, b));
            ++count;
        }
        const auto s = expected_values(n, tau, 4, 1);
        EXPECT_EQ(s.E_omega * binomial(n, tau), Rational(total)) << tau;
        EXPECT_EQ(binomial(n, tau), count);
    }
}

TEST(Expected, TailTermAndLargeLengths) {
    // odd tau ends on C(d, tau), even tau on C(d, tau-1) C(n-d, 1)
    EXPECT_EQ(expected_values(63, 3, 8, 1).q, binomial(8, 3));
    EXPECT_EQ(expected_values(63, 4, 8, 1).q, binomial(8, 3) * 55);
    const auto s = expected_values(127, 60, 22, 1590);
    EXPECT_GT(s.W, 0);
    EXPECT_GT(to_double(s.E_phi_c), 0.0);
    EXPECT_LT(to_double(s.E_omega), 127.0);
}

TEST(Separation, Degenerate) {
    const auto code = bch63_24();
    const auto cs = build_check_set(code);
    Rng rng(1);
    const auto s = separation_statistics(code, cs, 0, 5, rng);
    EXPECT_EQ(s.error_above_all_correct, 1.0);
    EXPECT_EQ(s.correct_below_all_errors, 1.0);
}

TEST(Separation, SmallAndLargeErrorWeights) {
    const auto code = bch63_24();
    const auto cs = build_check_set(code);
    Rng rng(2);
    const auto lo = separation_statistics(code, cs, 3, 300, rng);
    EXPECT_GE(lo.separated_trials, 0.999);
    const auto hi = separation_statistics(code, cs, 12, 500, rng);
    EXPECT_LT(hi.error_above_all_correct, 1.0);
    EXPECT_LT(hi.correct_below_all_errors, 1.0);
    EXPECT_GE(hi.correct_below_all_errors - hi.error_above_all_correct, 0.1);
}
