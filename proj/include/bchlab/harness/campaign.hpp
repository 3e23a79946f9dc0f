#ifndef BCHLAB_HARNESS_CAMPAIGN_HPP
#define BCHLAB_HARNESS_CAMPAIGN_HPP

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "bchlab/codes/bch_code.hpp"
#include "bchlab/codes/code_spec.hpp"
#include "bchlab/decoders/hard.hpp"
#include "bchlab/decoders/outcome.hpp"
#include "bchlab/harness/channel.hpp"
#include "bchlab/harness/mllb.hpp"
#include "bchlab/reliability/phi.hpp"
#include "bchlab/soft/soft.hpp"
#include "bchlab/wsearch/check_set.hpp"

namespace bchlab {

struct CampaignOptions {
    long long trials = 1000;
    long long max_trials = 0;      // above `trials`: keep extending until min_failures or this cap
    long long min_failures = 50;
    int workers = 1;
    std::uint64_t seed = 1;
    bool keep_outcomes = false;    // store per-trial failure flags (paired comparisons)
};

struct CampaignPoint {
    double x = 0.0;                // tau or Eb/N0 in dB
    long long trials = 0;
    long long failures = 0;
    double ml_lb_mass = 0.0;       // summed per-trial ML lower-bound contributions
    std::vector<std::uint8_t> outcomes;

    double p_fail() const noexcept { return trials ? static_cast<double>(failures) / static_cast<double>(trials) : 0.0; }
    double ml_lb_rate() const noexcept { return trials ? ml_lb_mass / static_cast<double>(trials) : 0.0; }
    double std_error() const noexcept {
        const double p = p_fail();
        return trials ? std::sqrt(p * (1.0 - p) / static_cast<double>(trials)) : 0.0;
    }
};

struct CampaignRecord {
    std::string code;
    std::string code_hash;
    std::string decoder;
    std::string param_hash;
    std::uint64_t seed = 0;
    bool soft = false;
    int n = 0;
    nlohmann::json config;
    std::vector<CampaignPoint> points;

    std::map<int, double> ptau() const {
        std::map<int, double> m;
        if (!soft)
            for (const auto& p : points) m[static_cast<int>(std::lround(p.x))] = p.p_fail();
        return m;
    }
};

inline std::string fnv_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct TrialResult {
    bool failure = false;
    double mass = 0.0;
};

namespace detail {

// Runs trials [begin, end) of one point; results land in index order so the
// reduction does not depend on scheduling.
template <class F>
void run_trials(long long begin, long long end, int workers, F&& f, std::vector<TrialResult>& out) {
    out.assign(static_cast<std::size_t>(end - begin), {});
    if (workers <= 1 || end - begin < 2) {
        for (long long i = begin; i < end; ++i) out[static_cast<std::size_t>(i - begin)] = f(i);
        return;
    }
    std::atomic<long long> next{begin};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            try {
                for (long long i; (i = next.fetch_add(1)) < end;) out[static_cast<std::size_t>(i - begin)] = f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!err) err = std::current_exception();
                next = end;
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

template <class F>
CampaignPoint run_point(double x, const CampaignOptions& opt, F&& f) {
    if (opt.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
    CampaignPoint pt;
    pt.x = x;
    std::vector<TrialResult> batch;
    long long done = 0, target = opt.trials;
    while (true) {
        run_trials(done, target, opt.workers, f, batch);
        for (const auto& r : batch) {
            pt.failures += r.failure;
            pt.ml_lb_mass += r.mass;
            if (opt.keep_outcomes) pt.outcomes.push_back(r.failure);
        }
        pt.trials = done = target;
        if (opt.max_trials <= done || pt.failures >= opt.min_failures) break;
        target = std::min(opt.max_trials, done * 2);
    }
    return pt;
}

// trial index space: point key in the high half, trial number in the low half
inline std::uint64_t trial_index(std::uint64_t key, long long i) { return key << 32 | static_cast<std::uint64_t>(i); }

inline std::uint64_t snr_key(double ebn0_db) { return static_cast<std::uint64_t>(std::llround(ebn0_db * 1000.0) + (1LL << 24)); }

} // namespace detail

// ---------------------------------------------------------------- hard

enum class HardDecoderKind { Erd, Isd, Rsd, Bdd };

inline const char* to_string(HardDecoderKind k) {
    switch (k) {
    case HardDecoderKind::Erd: return "erd";
    case HardDecoderKind::Isd: return "isd";
    case HardDecoderKind::Rsd: return "rsd";
    case HardDecoderKind::Bdd: return "bdd";
    }
    return "?";
}

inline HardDecoderKind hard_decoder_from_string(const std::string& s) {
    if (s == "erd") return HardDecoderKind::Erd;
    if (s == "isd") return HardDecoderKind::Isd;
    if (s == "rsd") return HardDecoderKind::Rsd;
    if (s == "bdd") return HardDecoderKind::Bdd;
    throw Error(ErrorCode::InvalidArgument, "unknown hard decoder '" + s + "'");
}

struct HardDecoderConfig {
    HardDecoderKind kind = HardDecoderKind::Isd;
    int flip_weight = 2;              // ISD
    std::optional<FlipPlan> plan;     // ISD; replaces the by-weight plan
    int max_iter = 0;                 // ERD; 0 means n
    int maxflip = 1;                  // ERD
    int mu = 0;                       // RSD; 0 means the default
    int shifts = 1;                   // RSD, evenly spaced
    int flip_budget = 0;              // RSD
    std::optional<int> bdd_radius;    // BDD

    nlohmann::json to_json() const {
        nlohmann::json j{{"decoder", to_string(kind)}};
        switch (kind) {
        case HardDecoderKind::Erd: j["max_iter"] = max_iter; j["maxflip"] = maxflip; break;
        case HardDecoderKind::Isd:
            if (plan) j["flip_plan"] = flip_plan_to_json(*plan);
            else j["flip_weight"] = flip_weight;
            break;
        case HardDecoderKind::Rsd: j["mu"] = mu; j["shifts"] = shifts; j["flip_budget"] = flip_budget; break;
        case HardDecoderKind::Bdd: j["radius"] = bdd_radius ? nlohmann::json(*bdd_radius) : nlohmann::json(nullptr); break;
        }
        return j;
    }
    std::string param_hash() const { return fnv_hex(to_json().dump()); }
};

/// A configured hard decoder; immutable after construction, so trials may share it.
class HardDecoder {
public:
    HardDecoder(const BchCode& code, const CheckSet& cs, HardDecoderConfig cfg)
        : code_(&code), cs_(&cs), cfg_(std::move(cfg)) {
        switch (cfg_.kind) {
        case HardDecoderKind::Isd:
            plan_ = cfg_.plan ? *cfg_.plan : make_flip_plan_by_weight(code.k(), std::min(cfg_.flip_weight, code.k()));
            plan_.validate();
            if (plan_.k != code.k()) throw Error(ErrorCode::InvalidArgument, "flip plan dimension does not match the code");
            break;
        case HardDecoderKind::Rsd:
            mu_ = cfg_.mu > 0 ? cfg_.mu : default_mu(code);
            if (mu_ > std::min(code.k(), code.redundancy())) throw Error(ErrorCode::InvalidArgument, "mu too large");
            if (cfg_.shifts < 1 || cfg_.shifts > code.n()) throw Error(ErrorCode::InvalidArgument, "shift count out of range");
            shifts_ = evenly_spaced_shifts(code.n(), cfg_.shifts);
            break;
        case HardDecoderKind::Bdd: bdd_ = std::make_unique<BddOracle>(code, cfg_.bdd_radius); break;
        case HardDecoderKind::Erd:
            if (cfg_.maxflip < 1) throw Error(ErrorCode::InvalidArgument, "maxflip must be positive");
            break;
        }
    }

    const HardDecoderConfig& config() const noexcept { return cfg_; }
    const FlipPlan& plan() const noexcept { return plan_; }
    int mu() const noexcept { return mu_; }

    DecodeOutcome decode(const CyclicWord& r, Rng& rng) const {
        switch (cfg_.kind) {
        case HardDecoderKind::Erd:
            return decode_erd(r, *cs_, cfg_.max_iter > 0 ? cfg_.max_iter : code_->n(), cfg_.maxflip, rng);
        case HardDecoderKind::Isd: return decode_isd(r, compute_phi(r, *cs_), *code_, plan_, &rng);
        case HardDecoderKind::Rsd: return decode_rsd(r, *code_, *cs_, mu_, shifts_, cfg_.flip_budget, nullptr, &rng);
        case HardDecoderKind::Bdd: return bdd_->decode(r);
        }
        return {};
    }

private:
    const BchCode* code_;
    const CheckSet* cs_;
    HardDecoderConfig cfg_;
    FlipPlan plan_;
    int mu_ = 0;
    std::vector<int> shifts_;
    std::unique_ptr<BddOracle> bdd_;
};

inline TrialResult hard_trial(const BchCode& code, const HardDecoder& dec, int tau, std::uint64_t seed, std::uint64_t index) {
    auto mr = trial_rng(seed, SeedStream::Message, index);
    auto nr = trial_rng(seed, SeedStream::Noise, index);
    auto dr = trial_rng(seed, SeedStream::Decoder, index);
    const auto c = random_codeword(code, mr);
    const auto r = c ^ sample_error(code.n(), tau, nr);
    const auto out = dec.decode(r, dr);
    return {!out.success() || *out.best != c, ml_lb_update(c, out, tau, r)};
}

/// Fixed-weight error campaign: per tau, random codewords hit by uniformly
/// random errors of weight tau.
inline CampaignRecord run_hard_campaign(const BchCode& code, const CheckSet& cs, const HardDecoderConfig& cfg,
                                        const std::vector<int>& taus, const CampaignOptions& opt) {
    if (taus.empty()) throw Error(ErrorCode::InvalidArgument, "no error weights given");
    for (int t : taus)
        if (t < 0 || t > code.n()) throw Error(ErrorCode::InvalidArgument, "error weight out of range");
    const HardDecoder dec(code, cs, cfg);
    CampaignRecord rec;
    rec.code = code.name().empty() ? CodeSpec::of(code).key() : code.name();
    rec.code_hash = CodeSpec::of(code).hash();
    rec.decoder = to_string(cfg.kind);
    rec.param_hash = cfg.param_hash();
    rec.seed = opt.seed;
    rec.n = code.n();
    rec.config = cfg.to_json();
    for (int tau : taus)
        rec.points.push_back(detail::run_point(tau, opt, [&](long long i) {
            return hard_trial(code, dec, tau, opt.seed, detail::trial_index(static_cast<std::uint64_t>(tau), i));
        }));
    return rec;
}

// ---------------------------------------------------------------- soft

enum class SoftDecoderKind { Chan, Dual, H };

inline const char* to_string(SoftDecoderKind k) {
    switch (k) {
    case SoftDecoderKind::Chan: return "isd-chan";
    case SoftDecoderKind::Dual: return "isd-dual";
    case SoftDecoderKind::H: return "isd-h";
    }
    return "?";
}

inline SoftDecoderKind soft_decoder_from_string(const std::string& s) {
    if (s == "isd-chan" || s == "chan") return SoftDecoderKind::Chan;
    if (s == "isd-dual" || s == "dual") return SoftDecoderKind::Dual;
    if (s == "isd-h" || s == "h") return SoftDecoderKind::H;
    throw Error(ErrorCode::InvalidArgument, "unknown soft decoder '" + s + "'");
}

struct SoftCampaignConfig {
    SoftDecoderKind kind = SoftDecoderKind::Dual;
    double alpha = 0.07;
    std::optional<int> T;
    SoftMetric metric = SoftMetric::Channel;
    int flip_weight = 2;
    std::optional<FlipPlan> plan;

    nlohmann::json to_json() const {
        nlohmann::json j{{"decoder", to_string(kind)},
                         {"metric", metric == SoftMetric::Channel ? "channel" : "combined"}};
        if (kind != SoftDecoderKind::Chan) {
            j["alpha"] = alpha;
            j["T"] = T ? nlohmann::json(*T) : nlohmann::json(nullptr);
        }
        if (plan) j["flip_plan"] = flip_plan_to_json(*plan);
        else j["flip_weight"] = flip_weight;
        return j;
    }
    std::string param_hash() const { return fnv_hex(to_json().dump()); }
};

class SoftDecoder {
public:
    SoftDecoder(const BchCode& code, const CheckSet& cs, SoftCampaignConfig cfg) : code_(&code), cfg_(std::move(cfg)) {
        plan_ = cfg_.plan ? *cfg_.plan : make_flip_plan_by_weight(code.k(), std::min(cfg_.flip_weight, code.k()));
        plan_.validate();
        if (plan_.k != code.k()) throw Error(ErrorCode::InvalidArgument, "flip plan dimension does not match the code");
        if (cfg_.kind != SoftDecoderKind::Chan && !(cfg_.alpha > 0.0))
            throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
        if (cfg_.kind == SoftDecoderKind::Dual) rot_ = std::make_unique<CheckRotations>(cs);
        if (cfg_.kind == SoftDecoderKind::H) rot_ = std::make_unique<CheckRotations>(check_polynomial_set(code));
    }

    const FlipPlan& plan() const noexcept { return plan_; }
    const CheckRotations* rotations() const noexcept { return rot_.get(); }

    SoftDecoderConfig decoder_config(double sigma_sq) const {
        return {sigma_sq, cfg_.kind == SoftDecoderKind::Chan ? 0.0 : cfg_.alpha, cfg_.T, cfg_.metric};
    }

    DecodeOutcome decode(std::span<const double> y, double sigma_sq, Rng& rng) const {
        return decode_isd_soft(y, *code_, rot_.get(), decoder_config(sigma_sq), plan_, &rng);
    }

private:
    const BchCode* code_;
    SoftCampaignConfig cfg_;
    FlipPlan plan_;
    std::unique_ptr<CheckRotations> rot_;
};

/// BPSK/AWGN campaign over Eb/N0 points. Trial i of a point sees the same
/// codeword and noise for every decoder, so runs with one seed are paired.
inline CampaignRecord run_soft_campaign(const BchCode& code, const CheckSet& cs, const SoftCampaignConfig& cfg,
                                        const std::vector<double>& ebn0s, const CampaignOptions& opt) {
    if (ebn0s.empty()) throw Error(ErrorCode::InvalidArgument, "no Eb/N0 points given");
    const SoftDecoder dec(code, cs, cfg);
    const double rate = static_cast<double>(code.k()) / code.n();
    CampaignRecord rec;
    rec.code = code.name().empty() ? CodeSpec::of(code).key() : code.name();
    rec.code_hash = CodeSpec::of(code).hash();
    rec.decoder = to_string(cfg.kind);
    rec.param_hash = cfg.param_hash();
    rec.seed = opt.seed;
    rec.soft = true;
    rec.n = code.n();
    rec.config = cfg.to_json();
    for (double snr : ebn0s) {
        const double s2 = awgn_sigma_sq(snr, rate);
        rec.points.push_back(detail::run_point(snr, opt, [&](long long i) {
            const auto idx = detail::trial_index(detail::snr_key(snr), i);
            const auto t = soft_trial(code, s2, opt.seed, idx);
            auto dr = trial_rng(opt.seed, SeedStream::Decoder, idx);
            const auto out = dec.decode(t.y, s2, dr);
            return TrialResult{!out.success() || *out.best != t.c, ml_lb_soft(t.c, out, t.y)};
        }));
    }
    return rec;
}

// ---------------------------------------------------------------- output

inline std::string campaign_csv(const CampaignRecord& rec) {
    std::string s = "code,decoder,param-hash,tau_or_snr,trials,failures,p_fail,ml_lb_mass,seed\n";
    char buf[256];
    for (const auto& p : rec.points) {
        std::snprintf(buf, sizeof buf, "%s,%s,%s,%.10g,%lld,%lld,%.10g,%.10g,%llu\n", rec.code.c_str(),
                      rec.decoder.c_str(), rec.param_hash.c_str(), p.x, p.trials, p.failures, p.p_fail(), p.ml_lb_mass,
                      static_cast<unsigned long long>(rec.seed));
        s += buf;
    }
    return s;
}

/// Full configuration and summary; `wer_at` adds WER(p) from the p_tau table
/// for hard campaigns.
inline nlohmann::json campaign_manifest(const CampaignRecord& rec, const CampaignOptions& opt,
                                        const std::vector<double>& wer_at = {}) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : rec.points)
        pts.push_back({{"x", p.x}, {"trials", p.trials}, {"failures", p.failures}, {"p_fail", p.p_fail()},
                       {"ml_lb_mass", p.ml_lb_mass}, {"std_error", p.std_error()}});
    nlohmann::json j{{"code", rec.code},
                     {"code_hash", rec.code_hash},
                     {"channel", rec.soft ? "awgn" : "fixed-weight"},
                     {"decoder", rec.config},
                     {"param_hash", rec.param_hash},
                     {"seed", rec.seed},
                     {"options",
                      {{"trials", opt.trials},
                       {"max_trials", opt.max_trials},
                       {"min_failures", opt.min_failures},
                       {"workers", opt.workers}}},
                     {"points", pts}};
    if (!rec.soft && !wer_at.empty()) {
        const auto pt = rec.ptau();
        nlohmann::json w = nlohmann::json::array();
        for (double p : wer_at)
            w.push_back({{"p", p}, {"wer", wer_from_ptau(rec.n, pt, p)},
                         {"ml_lb", [&] {
                              std::map<int, double> m;
                              for (const auto& q : rec.points) m[static_cast<int>(std::lround(q.x))] = q.ml_lb_rate();
                              return wer_from_ptau(rec.n, m, p);
                          }()}});
        j["wer"] = w;
        j["extrapolation"] = "p_tau = 0 below and 1 above the simulated weights";
    }
    return j;
}

} // namespace bchlab

#endif // BCHLAB_HARNESS_CAMPAIGN_HPP
