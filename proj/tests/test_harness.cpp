#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "bchlab/harness/campaign.hpp"
#include "bchlab/harness/mllb.hpp"
#include "bchlab/reliability/expected.hpp"

using namespace bchlab;

namespace {

BchCode bch15() { return BchCode::from_cosets(BinaryField(4, 0x13), {1, 3}, "bch15"); }
BchCode c1_63() { return BchCode::from_cosets(BinaryField(6), {5, 9, 11, 13, 21, 23, 27}, "C1"); }

DecodeOutcome listed(std::vector<CyclicWord> list) {
    DecodeOutcome out;
    out.list = std::move(list);
    out.best = out.list.front();
    out.status = DecodeStatus::Success;
    return out;
}

} // namespace

TEST(Wer, AlwaysFailingAndNeverFailing) {
    for (double p : {1e-3, 1e-2, 0.1, 0.3}) {
        EXPECT_NEAR(wer_from_ptau(63, {{0, 0.0}, {1, 1.0}}, p), 1.0 - std::pow(1.0 - p, 63), 1e-13);
        std::map<int, double> zero;
        for (int t = 0; t <= 63; ++t) zero[t] = 0.0;
        EXPECT_EQ(wer_from_ptau(63, zero, p), 0.0);
    }
    EXPECT_THROW((void)wer_from_ptau(63, {{1, 1.5}}, 0.1), Error);
    EXPECT_THROW((void)wer_from_ptau(63, {}, -0.1), Error);
}

TEST(Wer, MatchesExactRationalSum) {
    using boost::multiprecision::cpp_rational;
    const int n = 63;
    std::map<int, double> pt;
    for (int t = 3; t <= 14; ++t) pt[t] = static_cast<double>(t * t) / 256.0;
    pt[14] = 1.0;
    for (int den : {100, 30}) {
        const cpp_rational p(1, den);
        cpp_rational sum = 0;
        for (int t = 0; t <= n; ++t) {
            cpp_rational v = t < 3 ? cpp_rational(0) : t > 14 ? cpp_rational(1) : cpp_rational(t * t, 256);
            if (t == 14) v = 1;
            cpp_rational term = v * cpp_rational(binomial(n, t));
            for (int i = 0; i < t; ++i) term *= p;
            for (int i = 0; i < n - t; ++i) term *= (1 - p);
            sum += term;
        }
        const double exact = to_double(sum);
        EXPECT_NEAR(wer_from_ptau(n, pt, 1.0 / den), exact, exact * 1e-12) << den;
    }
}

TEST(Wer, MonotoneForNondecreasingTable) {
    std::map<int, double> pt;
    for (int t = 0; t <= 10; ++t) pt[t] = t < 4 ? 0.0 : (t - 3) / 8.0;
    double prev = 0.0;
    for (double p = 0.0; p <= 0.5; p += 0.01) {
        const double w = wer_from_ptau(63, pt, p);
        EXPECT_GE(w, prev - 1e-15);
        prev = w;
    }
}

TEST(MlLb, CaseTable) {
    const auto c = CyclicWord::from_exponents(15, {0, 4, 8});
    const auto other = CyclicWord::from_exponents(15, {1, 2, 3});
    const auto r = CyclicWord::from_exponents(15, {0, 4, 8, 11});

    EXPECT_EQ(ml_lb_update(c, listed({c}), 1, r), 0.0);            // tau_hat = tau, list {c}
    EXPECT_EQ(ml_lb_update(c, listed({other}), 6, other), 1.0);    // tau_hat = 0 < 6
    const auto r2 = CyclicWord::from_exponents(15, {1, 2, 3, 9});
    EXPECT_EQ(ml_lb_update(c, listed({other}), 1, r2), 0.5);       // tau_hat = tau, c not listed
    EXPECT_EQ(ml_lb_update(c, listed({other}), 0, r2), 0.0);       // tau_hat > tau

    // |L| = 2 at equal distance
    const auto a = CyclicWord::from_exponents(15, {0, 1});
    const auto b = CyclicWord::from_exponents(15, {2, 3});
    const CyclicWord zero(15);
    EXPECT_DOUBLE_EQ(ml_lb_update(a, listed({a, b}), 2, zero), 0.5);
    EXPECT_DOUBLE_EQ(ml_lb_update(c, listed({a, b}), 2, zero), 2.0 / 3.0);

    DecodeOutcome fail;
    EXPECT_EQ(ml_lb_update(c, fail, 3, r), 0.0);
    try {
        (void)ml_lb_update(c, listed({a, c}), 2, zero);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InconsistentList);
    }
}

TEST(MlLb, SoftRule) {
    const CyclicWord c(4);
    const auto other = CyclicWord::from_exponents(4, {0, 1});
    const std::vector<double> closer_to_other{-0.5, -0.5, 1.0, 1.0};
    const std::vector<double> closer_to_c{0.5, -0.2, 1.0, 1.0};
    EXPECT_EQ(ml_lb_soft(c, listed({other}), closer_to_other), 1.0);
    EXPECT_EQ(ml_lb_soft(c, listed({other}), closer_to_c), 0.0);
    EXPECT_EQ(ml_lb_soft(c, listed({c}), closer_to_other), 0.0);
}

TEST(HardCampaign, UniqueDecodingRegionExhaustive) {
    const auto code = bch15();
    const auto cs = build_check_set(code);
    const HardDecoder dec(code, cs, {});
    Rng rng(2);
    const auto c = random_codeword(code, rng);
    for (int i = 0; i < 15; ++i)
        for (int j = i; j < 15; ++j) {
            auto r = c;
            r.flip(i);
            if (j != i) r.flip(j);
            const auto out = dec.decode(r, rng);
            ASSERT_TRUE(out.success());
            EXPECT_EQ(*out.best, c) << i << " " << j;
        }
}

TEST(HardCampaign, ZeroWeightNeverFailsAndSmallWeightsDecode) {
    const auto code = bch15();
    const auto cs = build_check_set(code);
    CampaignOptions opt;
    opt.trials = 100;
    for (auto kind : {HardDecoderKind::Erd, HardDecoderKind::Isd, HardDecoderKind::Rsd, HardDecoderKind::Bdd}) {
        HardDecoderConfig cfg;
        cfg.kind = kind;
        const auto rec = run_hard_campaign(code, cs, cfg, {0, 1, 2}, opt);
        ASSERT_EQ(rec.points.size(), 3u);
        for (const auto& p : rec.points) {
            EXPECT_EQ(p.trials, 100);
            // a single-shift RSD is not a bounded-distance decoder
            if (kind != HardDecoderKind::Rsd || p.x == 0) EXPECT_EQ(p.failures, 0) << to_string(kind) << " tau " << p.x;
            EXPECT_LE(p.ml_lb_mass, static_cast<double>(p.failures));
        }
    }
}

TEST(HardCampaign, DeterministicAcrossRunsAndWorkers) {
    const auto code = c1_63();
    const auto cs = build_check_set(code);
    HardDecoderConfig cfg;
    cfg.flip_weight = 1;
    CampaignOptions opt;
    opt.trials = 60;
    opt.seed = 77;
    const auto a = campaign_csv(run_hard_campaign(code, cs, cfg, {6, 9, 12}, opt));
    const auto b = campaign_csv(run_hard_campaign(code, cs, cfg, {6, 9, 12}, opt));
    opt.workers = 3;
    const auto c = campaign_csv(run_hard_campaign(code, cs, cfg, {6, 9, 12}, opt));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
    EXPECT_EQ(a.substr(0, a.find('\n')), "code,decoder,param-hash,tau_or_snr,trials,failures,p_fail,ml_lb_mass,seed");
    EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 4);
    opt.seed = 78;
    EXPECT_NE(a, campaign_csv(run_hard_campaign(code, cs, cfg, {6, 9, 12}, opt)));
}

TEST(HardCampaign, MlBoundBelowFailures) {
    const auto code = c1_63();
    const auto cs = build_check_set(code);
    CampaignOptions opt;
    opt.trials = 80;
    for (auto kind : {HardDecoderKind::Isd, HardDecoderKind::Rsd, HardDecoderKind::Erd}) {
        HardDecoderConfig cfg;
        cfg.kind = kind;
        cfg.flip_weight = 1;
        const auto rec = run_hard_campaign(code, cs, cfg, {8, 11, 14}, opt);
        for (const auto& p : rec.points) EXPECT_LE(p.ml_lb_mass, static_cast<double>(p.failures) + 1e-9);
    }
}

TEST(HardCampaign, AutoExtension) {
    const auto code = bch15();
    const auto cs = build_check_set(code);
    CampaignOptions opt;
    opt.trials = 20;
    opt.max_trials = 200;
    opt.min_failures = 10;
    const auto rec = run_hard_campaign(code, cs, {}, {0, 7}, opt);
    EXPECT_EQ(rec.points[0].trials, 200);  // never fails, runs to the cap
    EXPECT_EQ(rec.points[1].trials, 20);   // fails immediately often enough
    EXPECT_GE(rec.points[1].failures, 10);
    opt.trials = 0;
    EXPECT_THROW((void)run_hard_campaign(code, cs, {}, {1}, opt), Error);
}

TEST(HardCampaign, ManifestCarriesWerTable) {
    const auto code = bch15();
    const auto cs = build_check_set(code);
    CampaignOptions opt;
    opt.trials = 50;
    const auto rec = run_hard_campaign(code, cs, {}, {1, 2, 3, 4}, opt);
    const auto j = nlohmann::json::parse(campaign_manifest(rec, opt, {0.01}).dump());
    EXPECT_EQ(j.at("param_hash").get<std::string>(), rec.param_hash);
    EXPECT_EQ(j.at("points").size(), 4u);
    EXPECT_NEAR(j.at("wer").at(0).at("wer").get<double>(), wer_from_ptau(15, rec.ptau(), 0.01), 1e-15);
}

TEST(SoftCampaign, NoiselessLimitAndPairing) {
    const auto code = c1_63();
    const auto cs = build_check_set(code);
    SoftCampaignConfig cfg;
    cfg.kind = SoftDecoderKind::Chan;
    cfg.flip_weight = 1;
    CampaignOptions opt;
    opt.trials = 1000;
    const auto quiet = run_soft_campaign(code, cs, cfg, {60.0}, opt);
    EXPECT_EQ(quiet.points[0].failures, 0);
    EXPECT_TRUE(quiet.soft);

    opt.trials = 40;
    opt.keep_outcomes = true;
    const auto a = run_soft_campaign(code, cs, cfg, {1.0}, opt);
    cfg.kind = SoftDecoderKind::Dual;
    cfg.T = 50;
    const auto b = run_soft_campaign(code, cs, cfg, {1.0}, opt);
    ASSERT_EQ(a.points[0].outcomes.size(), 40u);
    ASSERT_EQ(b.points[0].outcomes.size(), 40u);
    EXPECT_NE(a.param_hash, b.param_hash);
    EXPECT_GT(a.points[0].failures, 0);
    EXPECT_LE(a.points[0].ml_lb_mass, static_cast<double>(a.points[0].failures));
    EXPECT_EQ(campaign_csv(a), campaign_csv(run_soft_campaign(code, cs, {SoftDecoderKind::Chan, 0.07, {}, SoftMetric::Channel, 1, {}}, {1.0}, opt)));
}
