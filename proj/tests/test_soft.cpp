#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bchlab/reliability/phi.hpp"
#include "bchlab/soft/planner.hpp"
#include "bchlab/soft/soft.hpp"

using namespace bchlab;

namespace {

BchCode bch15() { return BchCode::from_cosets(BinaryField(4, 0x13), {1, 3}); }
BchCode c1_63() { return BchCode::from_cosets(BinaryField(6), {5, 9, 11, 13, 21, 23, 27}); }

std::vector<double> noisy(const CyclicWord& c, double sigma_sq, std::uint64_t seed) {
    Rng rng(seed);
    return awgn_transmit(c, sigma_sq, rng);
}

double sq_dist(const std::vector<double>& y, const CyclicWord& c) {
    const auto x = bpsk(c);
    double s = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) s += (y[j] - x[j]) * (y[j] - x[j]);
    return s;
}

std::vector<CyclicWord> all_codewords(const BchCode& code) {
    std::vector<CyclicWord> out;
    for (int m = 0; m < (1 << code.k()); ++m) {
        std::vector<int> info(static_cast<std::size_t>(code.k()));
        for (int i = 0; i < code.k(); ++i) info[static_cast<std::size_t>(i)] = m >> i & 1;
        out.push_back(code.encode_systematic(info));
    }
    return out;
}

} // namespace

TEST(ChannelReliability, ZeroSymmetricAndMonotone) {
    const std::vector<double> zero{0.0, 0.0};
    for (double v : channel_reliability(zero, 0.5).values) EXPECT_EQ(v, 0.0);

    const auto c = CyclicWord::from_exponents(15, {0, 4, 9});
    const auto L = channel_reliability(bpsk(c), 0.7);
    for (int j = 0; j < 15; ++j) {
        EXPECT_DOUBLE_EQ(std::abs(L[j]), std::tanh(1.0 / 0.7));
        EXPECT_EQ(L[j] < 0.0, c.test(j));
    }

    const auto y = noisy(CyclicWord(63), 0.8, 4);
    const auto R = channel_reliability(y, 0.8);
    for (int i = 0; i < 63; ++i)
        for (int j = 0; j < 63; ++j)
            if (std::abs(y[static_cast<std::size_t>(i)]) > std::abs(y[static_cast<std::size_t>(j)]))
                ASSERT_GE(std::abs(R[i]), std::abs(R[j]));
    EXPECT_THROW((void)channel_reliability(y, 0.0), Error);
}

TEST(Extrinsic, AlphaZeroIsChannelOnly) {
    const auto code = c1_63();
    const CheckRotations rot(build_check_set(code));
    Rng rng(1);
    const auto y = noisy(random_codeword(code, rng), 0.6, 2);
    const auto L = channel_reliability(y, 0.6);
    const auto U = extrinsic_update(L, rot, 50, 0.0, y);
    EXPECT_EQ(U.values, L.values);
    EXPECT_EQ(U.hard(), L.hard());
    EXPECT_EQ(soft_order(U, y), soft_order(L, y));
}

TEST(Extrinsic, SingleCheckFormula) {
    const auto code = bch15();
    const auto cs = make_check_set(code, {CyclicWord::from_exponents(15, {11, 3, 2, 0})});
    const CheckRotations rot(cs);
    ASSERT_EQ(rot.count(), 15u);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    SoftReliability L;
    for (int j = 0; j < 15; ++j) L.values.push_back(u(rng));
    const auto U = extrinsic_update(L, rot, std::nullopt, 0.3);
    EXPECT_EQ(U.admitted, 15);
    const auto b = cs.checks[0].support();
    for (int h = 0; h < 15; ++h) {
        double expect = 0.0;
        for (int s = 0; s < 15; ++s) {
            bool in = false;
            double prod = 1.0;
            for (int t : b) {
                const int p = (t + s) % 15;
                if (p == h) in = true;
                else prod *= L[p];
            }
            if (in) expect += 2.0 * std::atanh(prod);
        }
        EXPECT_GT(U.extrinsic[static_cast<std::size_t>(h)], 0.0);
        EXPECT_NEAR(U.extrinsic[static_cast<std::size_t>(h)], expect, 1e-9);
        EXPECT_NEAR(U[h], L[h] + 0.3 * expect, 1e-9);
    }
}

TEST(Extrinsic, FilterMatchesDirectCount) {
    const auto code = c1_63();
    const auto cs = build_check_set(code);
    const CheckRotations rot(cs);
    EXPECT_EQ(rot.count(), static_cast<std::size_t>(63 * cs.L()));
    Rng rng(7);
    const auto y = awgn_transmit(random_codeword(code, rng), 0.5, rng);
    const auto L = channel_reliability(y, 0.5);
    for (int T : {20, 40, 50, 63}) {
        std::vector<std::pair<double, int>> rank;
        for (int j = 0; j < 63; ++j) rank.push_back({-std::abs(y[static_cast<std::size_t>(j)]), j});
        std::sort(rank.begin(), rank.end());
        std::vector<bool> reliable(63, false);
        for (int i = 0; i < T; ++i) reliable[static_cast<std::size_t>(rank[static_cast<std::size_t>(i)].second)] = true;
        long long expect = 0;
        for (const auto& c : cs.checks)
            for (int s = 0; s < 63; ++s) {
                int outside = 0;
                for (int t : c.support()) outside += !reliable[static_cast<std::size_t>((t + s) % 63)];
                expect += outside <= 1;
            }
        EXPECT_EQ(extrinsic_update(L, rot, T, 0.1, y).admitted, expect) << T;
        EXPECT_EQ(count_admitted(rot, unreliable_mask(L, T, y)), expect);
    }
    EXPECT_EQ(extrinsic_update(L, rot, 63, 0.1, y).admitted, static_cast<long long>(rot.count()));
    EXPECT_EQ(extrinsic_update(L, rot, std::nullopt, 0.1, y).admitted, static_cast<long long>(rot.count()));
}

TEST(Extrinsic, NoiselessSignConsistency) {
    const auto code = c1_63();
    const CheckRotations rot(build_check_set(code));
    Rng rng(3);
    const auto c = random_codeword(code, rng);
    const auto y = bpsk(c);
    const auto U = extrinsic_update(channel_reliability(y, 0.9), rot, 50, 0.07, y);
    EXPECT_GT(U.admitted, 0);
    for (int j = 0; j < 63; ++j) {
        const double e = U.extrinsic[static_cast<std::size_t>(j)];
        if (e != 0.0) EXPECT_EQ(e > 0.0, y[static_cast<std::size_t>(j)] > 0.0);
    }
    EXPECT_EQ(U.hard(), c);
}

TEST(Extrinsic, ZeroInputsStayFinite) {
    const auto code = c1_63();
    const CheckRotations rot(build_check_set(code));
    std::vector<double> y(63, 0.0);
    y[3] = 1e-12;
    y[10] = -2.0;
    for (auto T : {std::optional<int>{}, std::optional<int>{50}}) {
        const auto U = extrinsic_update(channel_reliability(y, 0.5), rot, T, 0.1, y);
        for (double v : U.values) EXPECT_TRUE(std::isfinite(v));
    }
}

TEST(SoftIsd, NoiselessReturnsCodewordWithZeroPattern) {
    const auto code = c1_63();
    const CheckRotations rot(build_check_set(code));
    const auto plan = make_flip_plan_by_weight(code.k(), 2);
    Rng rng(11);
    for (int t = 0; t < 5; ++t) {
        const auto c = random_codeword(code, rng);
        for (double alpha : {0.0, 0.07}) {
            const auto out = decode_isd_dual(bpsk(c), code, rot, {0.5, alpha, 50, SoftMetric::Channel}, plan);
            ASSERT_TRUE(out.success());
            EXPECT_EQ(*out.best, c);
            EXPECT_EQ(out.est_errors, 0);
            EXPECT_EQ(out.list.size(), 1u);
        }
    }
}

TEST(SoftIsd, FullPlanIsMaximumLikelihood) {
    const auto code = bch15();
    const auto words = all_codewords(code);
    const CheckRotations rot(build_check_set(code));
    const auto plan = make_flip_plan_by_weight(code.k(), code.k());
    Rng rng(12);
    for (int t = 0; t < 60; ++t) {
        const auto y = awgn_transmit(random_codeword(code, rng), 1.2, rng);
        double best = 1e300;
        CyclicWord ml(15);
        for (const auto& w : words)
            if (sq_dist(y, w) < best) best = sq_dist(y, w), ml = w;
        for (double alpha : {0.0, 0.2}) {
            const auto out = decode_isd_dual(y, code, rot, {1.2, alpha, std::nullopt, SoftMetric::Channel}, plan);
            EXPECT_EQ(*out.best, ml);
            EXPECT_EQ(out.work, 128);
        }
    }
}

TEST(SoftIsd, CombinedMetricPicksClosestToCombinedDecisions) {
    const auto code = bch15();
    const auto words = all_codewords(code);
    const CheckRotations rot(build_check_set(code));
    const auto plan = make_flip_plan_by_weight(code.k(), code.k());
    Rng rng(13);
    for (int t = 0; t < 30; ++t) {
        const auto y = awgn_transmit(random_codeword(code, rng), 1.0, rng);
        const SoftDecoderConfig cfg{1.0, 0.3, std::nullopt, SoftMetric::Combined};
        const auto L = combined_reliability(y, &rot, cfg);
        double best = 1e300;
        for (const auto& w : words) {
            double s = 0.0;
            for (int j = 0; j < 15; ++j)
                if (w.test(j) != (L[j] < 0.0)) s += std::abs(L[j]);
            best = std::min(best, s);
        }
        const auto out = decode_isd_dual(y, code, rot, cfg, plan);
        double got = 0.0;
        for (int j = 0; j < 15; ++j)
            if (out.best->test(j) != (L[j] < 0.0)) got += std::abs(L[j]);
        EXPECT_NEAR(got, best, 1e-12);
    }
}

TEST(SoftIsd, CheckPolynomialSet) {
    const auto code = c1_63();
    const auto cs = check_polynomial_set(code);
    ASSERT_EQ(cs.L(), 1);
    EXPECT_EQ(cs.checks[0].weight(), code.check_word().weight());
    Rng rng(4);
    EXPECT_TRUE(compute_phi(random_codeword(code, rng), cs).all_zero());
}

TEST(AMatrix, NoiselessIsEmpty) {
    const auto code = c1_63();
    const auto A = simulate_A(code, nullptr, 60.0, {}, 50, 1);
    EXPECT_EQ(A.trials, 50);
    EXPECT_TRUE(A.counts.empty());
    EXPECT_EQ(A.total_mass(), 0.0);
    EXPECT_THROW((void)simulate_A(code, nullptr, 3.0, {}, 0, 1), Error);
}

TEST(AMatrix, RowSumsMatchRecount) {
    const auto code = c1_63();
    const CheckRotations rot(build_check_set(code));
    const SoftDecoderConfig cfg{0.0, 0.07, 50, SoftMetric::Channel};
    const auto A = simulate_A(code, &rot, 2.0, cfg, 300, 9);
    const double s2 = awgn_sigma_sq(2.0, 31.0 / 63.0);
    std::map<int, long long> per_tau;
    for (int i = 0; i < 300; ++i) {
        const auto t = soft_trial(code, s2, 9, static_cast<std::uint64_t>(i));
        auto c2 = cfg;
        c2.sigma_sq = s2;
        const auto L = combined_reliability(t.y, &rot, c2);
        const auto order = soft_order(L, t.y);
        const InformationSet is(code, order);
        int tau = 0;
        for (int p : is.pivots()) tau += L.hard().test(p) != t.c.test(p);
        ++per_tau[tau];
    }
    EXPECT_GT(A.total_count(), 0);
    for (int tau = 1; tau <= A.max_tau(); ++tau) EXPECT_EQ(A.row_count(tau), per_tau[tau]) << tau;
    double sum = 0.0;
    for (const auto& [cell, c] : A.counts) {
        EXPECT_GE(cell.second, 0);
        EXPECT_LT(cell.second, code.k());
        sum += A.a(cell.first, cell.second);
    }
    EXPECT_LE(sum, 1.0);
    EXPECT_NEAR(sum + static_cast<double>(per_tau[0]) / 300.0, 1.0, 1e-12);

    const auto back = a_matrix_from_json(a_matrix_to_json(A));
    EXPECT_EQ(back.counts, A.counts);
    EXPECT_EQ(back.T, A.T);
    EXPECT_EQ(back.trials, A.trials);
}

namespace {

AMatrix synthetic(int k, std::uint64_t seed) {
    AMatrix A;
    A.k = k;
    A.trials = 1000;
    std::mt19937_64 rng(seed);
    for (int tau = 1; tau <= 3; ++tau)
        for (int i = 0; i < 6; ++i) {
            const int ell = static_cast<int>(rng() % static_cast<std::uint64_t>(k - tau + 1));
            A.counts[{tau, ell}] += static_cast<long long>(1 + rng() % 40);
        }
    return A;
}

long long choose(int s, int w) {
    long long r = 1;
    for (int i = 0; i < w; ++i) r = r * (s - i) / (i + 1);
    return r;
}

} // namespace

TEST(Planner, BudgetOneKeepsOnlyZeroPattern) {
    const auto A = synthetic(10, 1);
    const auto p = plan_flips(A, 1);
    EXPECT_EQ(p.plan.size(), 1u);
    EXPECT_DOUBLE_EQ(p.wer_est, A.total_mass());
    EXPECT_THROW((void)plan_flips(A, 0), Error);
}

TEST(Planner, LargeBudgetCoversEverything) {
    const auto A = synthetic(10, 2);
    const auto p = plan_flips(A, 1 + 10 + 45 + 120);
    EXPECT_EQ(p.wer_est, 0.0);
    p.plan.validate();
}

TEST(Planner, MatchesBruteForceOptimum) {
    const int k = 10;
    for (std::uint64_t seed = 3; seed < 9; ++seed) {
        const auto A = synthetic(k, seed);
        for (long long budget : {2LL, 5LL, 12LL, 30LL, 60LL, 100LL}) {
            long long best = 0;
            for (int s1 = 0; s1 <= k; ++s1)
                for (int s2 = 0; s2 <= k; ++s2)
                    for (int s3 = 0; s3 <= k; ++s3) {
                        const int s[4] = {0, s1, s2, s3};
                        long long cost = 1, cov = 0;
                        for (int w = 1; w <= 3; ++w) {
                            cost += s[w] >= w ? choose(s[w], w) : 0;
                            for (const auto& [cell, c] : A.counts)
                                if (cell.first == w && s[w] >= w && cell.second >= k - s[w]) cov += c;
                        }
                        if (cost <= budget) best = std::max(best, cov);
                    }
            const auto p = plan_flips(A, budget);
            EXPECT_EQ(p.covered, best) << seed << " " << budget;
            EXPECT_LE(static_cast<long long>(p.plan.size()), budget);
            EXPECT_NEAR(p.wer_est, static_cast<double>(A.total_count() - best) / 1000.0, 1e-12);
            // the plan really covers what it claims
            long long cov = 0;
            for (const auto& [cell, c] : A.counts)
                for (const auto& f : p.plan.families)
                    if (f.weight == cell.first && cell.second >= k - f.tail) cov += c;
            EXPECT_EQ(cov, p.covered);
        }
    }
}

TEST(Planner, TwoFamilyPlanSize) {
    // weight-1 tail 55 plus weight-2 tail 10 on k = 64
    AMatrix A;
    A.k = 64;
    A.trials = 10000;
    A.counts[{1, 64 - 55}] = 300;
    A.counts[{2, 64 - 10}] = 80;
    A.counts[{2, 10}] = 5;
    const auto p = plan_flips(A, 101);
    ASSERT_EQ(p.plan.families.size(), 2u);
    EXPECT_EQ(p.plan.families[0], (FlipFamily{1, 55}));
    EXPECT_EQ(p.plan.families[1], (FlipFamily{2, 10}));
    EXPECT_EQ(p.plan.size(), 101u);
    EXPECT_DOUBLE_EQ(p.wer_est, 5.0 / 10000.0);
}

TEST(Planner, FillSpendsLeftoverOnLightFamilies) {
    AMatrix A;
    A.k = 31;
    A.trials = 1000;
    A.counts[{1, 28}] = 20;
    A.counts[{2, 29}] = 4;
    const auto lean = plan_flips(A, 100, false);
    const auto full = plan_flips(A, 100);
    EXPECT_EQ(lean.plan.size(), 1u + 3u + 1u);
    EXPECT_EQ(full.covered, lean.covered);
    EXPECT_DOUBLE_EQ(full.wer_est, lean.wer_est);
    ASSERT_EQ(full.plan.families.size(), 2u);
    EXPECT_EQ(full.plan.families[0], (FlipFamily{1, 31}));
    // 1 + 31 + C(s, 2) <= 100 gives s = 12
    EXPECT_EQ(full.plan.families[1], (FlipFamily{2, 12}));
    EXPECT_EQ(full.plan.size(), 1u + 31u + 66u);
    full.plan.validate();
}
