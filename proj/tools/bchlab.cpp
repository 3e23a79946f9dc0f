#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bchlab/codes/bch_code.hpp"
#include "bchlab/codes/code_spec.hpp"
#include "bchlab/codes/selection.hpp"
#include "bchlab/harness/campaign.hpp"
#include "bchlab/rm/rm_equiv.hpp"
#include "bchlab/soft/planner.hpp"
#include "bchlab/wsearch/check_set.hpp"
#include "bchlab/wsearch/search.hpp"

using namespace bchlab;
using json = nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { Ok = 0, Config = 2, Budget = 3 };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CodeSpec read_spec(const std::string& arg) {
    if (arg.empty()) throw ConfigError("--spec is required");
    if (std::filesystem::exists(arg)) return load_code_spec(arg);
    if (!arg.empty() && arg.front() == '{') return parse_code_spec(arg);
    throw ConfigError("cannot open code spec " + arg);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);)
        if (!item.empty()) out.push_back(item);
    return out;
}

// "1-14", "3,5,7" or a mix such as "1-4,8"
std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    try {
        for (const auto& part : split(s, ',')) {
            const auto dash = part.find('-', 1);
            if (dash == std::string::npos) {
                out.push_back(std::stoi(part));
            } else {
                const int a = std::stoi(part.substr(0, dash)), b = std::stoi(part.substr(dash + 1));
                if (b < a) throw ConfigError("empty range " + part);
                for (int v = a; v <= b; ++v) out.push_back(v);
            }
        }
    } catch (const std::logic_error&) {
        throw ConfigError("cannot parse integer list '" + s + "'");
    }
    if (out.empty()) throw ConfigError("empty list '" + s + "'");
    return out;
}

// "2,2.5,3" or "start:stop:step"
std::vector<double> parse_real_list(const std::string& s) {
    std::vector<double> out;
    try {
        const auto colon = split(s, ':');
        if (colon.size() == 3) {
            const double a = std::stod(colon[0]), b = std::stod(colon[1]), st = std::stod(colon[2]);
            if (!(st > 0.0) || b < a) throw ConfigError("bad range '" + s + "'");
            for (int i = 0; a + i * st <= b + 1e-9; ++i) out.push_back(a + i * st);
        } else {
            for (const auto& part : split(s, ',')) out.push_back(std::stod(part));
        }
    } catch (const std::logic_error&) {
        throw ConfigError("cannot parse number list '" + s + "'");
    }
    if (out.empty()) throw ConfigError("empty list '" + s + "'");
    return out;
}

void write_file(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path);
    out << text;
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

json manifest_base(const std::string& command, const CodeSpec* spec, std::uint64_t seed) {
    json j{{"command", command}, {"tool_version", kVersion}, {"seed", seed}};
    if (spec) {
        j["code_spec"] = *spec;
        j["code_hash"] = spec->hash();
    }
    return j;
}

CheckSet load_checks(const BchCode& code, int min_count, std::uint64_t budget) {
    CheckSetOptions opt;
    opt.min_count = min_count;
    opt.search.budget = budget;
    return cached_check_set(code, opt, cache_dir_from_env());
}

FlipPlan read_flip_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open flip plan " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("flip plan: ") + e.what());
    }
    if (j.contains("plan")) j = j.at("plan");
    return flip_plan_from_json(j);
}

// ---------------------------------------------------------------- commands

struct SearchArgs {
    int m = 6, k = 31;
    bool best = false, list = false, properties = false;
    std::size_t limit = 0;
};

int cmd_code_search(const SearchArgs& a) {
    if (a.m < 2 || a.m > 16) throw ConfigError("m must lie in [2, 16]");
    const BinaryField field(a.m);
    const auto t = cyclotomic_cosets(field.order());
    const SelectionEnumerator en(t, a.k);
    std::cout << "m=" << a.m << " n=" << field.order() << " k=" << a.k << " combinations: " << en.count() << '\n';
    if (en.count() == 0) {
        std::cerr << "no coset selection reaches dimension " << a.k << '\n';
        return Config;
    }
    if (!a.best && !a.list) return Ok;

    struct Row {
        std::vector<int> leaders;
        int d = 0;
    };
    std::vector<Row> rows;
    int best = 0;
    en.for_each([&](const std::vector<int>& l) {
        const int d = designed_distance(coset_union(t, l), field.order());
        best = std::max(best, d);
        rows.push_back({l, d});
    });
    if (a.best) {
        std::cout << "best designed distance: " << best << '\n';
        std::erase_if(rows, [&](const Row& r) { return r.d != best; });
    }
    std::size_t shown = 0;
    for (const auto& r : rows) {
        if (a.limit && shown++ >= a.limit) break;
        std::cout << "leaders {" << join(r.leaders) << "} d=" << r.d;
        if (a.properties) {
            const auto code = BchCode::from_cosets(field, r.leaders);
            const auto w = min_weight_search(code);
            const auto dw = min_weight_search(dual_code(code));
            std::cout << " delta=" << w.min_weight << (w.exhaustive ? "" : "?") << " delta_perp=" << dw.min_weight
                      << (dw.exhaustive ? "" : "?");
        }
        std::cout << '\n';
    }
    return Ok;
}

int cmd_code_info(const std::string& spec_arg, std::uint64_t budget, int min_count) {
    const auto spec = read_spec(spec_arg);
    const auto code = spec.build();
    const auto gh = code.generator() * code.check_poly();
    std::cout << "code " << (code.name().empty() ? spec.key() : code.name()) << " hash " << spec.hash() << '\n'
              << "n=" << code.n() << " k=" << code.k() << " m=" << code.m() << " prim_poly=0x" << std::hex
              << code.prim_poly() << std::dec << '\n'
              << "leaders {" << join(code.leaders()) << "}\n"
              << "g(x) = " << code.generator().to_string() << '\n'
              << "h(x) = " << code.check_poly().to_string() << '\n'
              << "g*h == x^n-1: " << (gh == Poly::xn_minus_one(code.n()) ? "true" : "false") << '\n'
              << "d=" << code.designed_distance() << " d_perp=" << code.dual_designed_distance() << '\n';
    SearchOptions so;
    so.budget = budget;
    const auto w = min_weight_search(code, so);
    std::cout << "delta=" << w.min_weight << (w.exhaustive ? " (exhaustive)" : " (upper bound, budget exhausted)") << '\n';
    bool complete = w.exhaustive;
    if (code.k() < code.n()) {
        const auto cs = load_checks(code, min_count, budget);
        complete = complete && cs.exhaustive;
        std::cout << "delta_perp=" << cs.delta_perp << " L=" << cs.L();
        if (cs.w_add) std::cout << " w_add=" << cs.w_add << " L_add=" << cs.L_add;
        std::cout << (cs.exhaustive ? " (exhaustive)" : " (not certified)") << '\n';
        int proper = 0, sub = 0, both = 0;
        for (const auto& c : cs.checks) {
            switch (classify_subcode(c, code).kind) {
            case SubcodeKind::ProperDual: ++proper; break;
            case SubcodeKind::SubcodeOnly: ++sub; break;
            default: ++both; break;
            }
        }
        std::cout << "checks: " << proper << " generate the dual, " << sub << " a proper subcode, " << both << " other\n";
    }
    return complete || budget == 0 ? Ok : Budget;
}

int cmd_checks(const std::string& spec_arg, std::uint64_t budget, int min_count, const std::string& out) {
    const auto spec = read_spec(spec_arg);
    const auto code = spec.build();
    const auto cs = load_checks(code, min_count, budget);
    const auto j = check_set_to_json(cs, spec.hash());
    if (out.empty()) std::cout << j.dump(2) << '\n';
    else write_file(out, j.dump(2) + "\n");
    std::cerr << "delta_perp=" << cs.delta_perp << " L=" << cs.L() << (cs.exhaustive ? " exhaustive" : " not certified")
              << '\n';
    return cs.exhaustive || budget == 0 ? Ok : Budget;
}

struct SimArgs {
    std::string spec, decoder, tau, ebn0, flip_plan, out, metric = "channel";
    std::uint64_t seed = 1;
    long long trials = 1000, max_trials = 0, min_failures = 50;
    int workers = 1, flip_weight = 2, mu = 0, shifts = 1, flip_budget = 0, maxflip = 1, max_iter = 0, min_count = 1;
    std::optional<int> radius, T;
    double alpha = 0.07;
    std::string wer_p;
};

void emit_campaign(const SimArgs& a, const std::string& command, const CodeSpec& spec, const CampaignRecord& rec,
                   const CampaignOptions& opt, const std::vector<double>& wer_at, double seconds) {
    const auto csv = campaign_csv(rec);
    auto man = manifest_base(command, &spec, a.seed);
    man.update(campaign_manifest(rec, opt, wer_at));
    man["wall_time_s"] = seconds;
    if (a.out.empty()) {
        std::cout << csv;
        return;
    }
    man["outputs"] = {a.out, a.out + ".json"};
    write_file(a.out, csv);
    write_file(a.out + ".json", man.dump(2) + "\n");
    std::cerr << "wrote " << a.out << " and " << a.out << ".json\n";
}

CampaignOptions campaign_options(const SimArgs& a) {
    if (a.trials < 1) throw ConfigError("--trials must be positive");
    if (a.workers < 1) throw ConfigError("--workers must be positive");
    CampaignOptions opt;
    opt.trials = a.trials;
    opt.max_trials = a.max_trials;
    opt.min_failures = a.min_failures;
    opt.workers = a.workers;
    opt.seed = a.seed;
    return opt;
}

int cmd_sim_hard(const SimArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto spec = read_spec(a.spec);
    const auto code = spec.build();
    const auto opt = campaign_options(a);
    HardDecoderConfig cfg;
    cfg.kind = hard_decoder_from_string(a.decoder);
    cfg.flip_weight = a.flip_weight;
    if (!a.flip_plan.empty()) cfg.plan = read_flip_plan(a.flip_plan);
    cfg.mu = a.mu;
    cfg.shifts = a.shifts;
    cfg.flip_budget = a.flip_budget;
    cfg.maxflip = a.maxflip;
    cfg.max_iter = a.max_iter;
    cfg.bdd_radius = a.radius;
    const auto taus = parse_int_list(a.tau.empty() ? "1-" + std::to_string(code.designed_distance()) : a.tau);
    const CheckSet cs = cfg.kind == HardDecoderKind::Bdd ? CheckSet{} : load_checks(code, a.min_count, 0);
    const auto rec = run_hard_campaign(code, cs, cfg, taus, opt);
    const auto wer_at = a.wer_p.empty() ? std::vector<double>{1e-2} : parse_real_list(a.wer_p);
    emit_campaign(a, "sim-hard", spec, rec, opt, wer_at,
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return Ok;
}

SoftCampaignConfig soft_config(const SimArgs& a, const BchCode& code) {
    SoftCampaignConfig cfg;
    cfg.kind = soft_decoder_from_string(a.decoder);
    cfg.alpha = a.alpha;
    cfg.T = a.T;
    if (a.metric == "channel") cfg.metric = SoftMetric::Channel;
    else if (a.metric == "combined") cfg.metric = SoftMetric::Combined;
    else throw ConfigError("--metric must be channel or combined");
    cfg.flip_weight = a.flip_weight;
    if (!a.flip_plan.empty()) cfg.plan = read_flip_plan(a.flip_plan);
    if (a.T && (*a.T < 0 || *a.T > code.n())) throw ConfigError("--T must lie in [0, n]");
    return cfg;
}

int cmd_sim_soft(const SimArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto spec = read_spec(a.spec);
    const auto code = spec.build();
    const auto opt = campaign_options(a);
    const auto cfg = soft_config(a, code);
    const CheckSet cs = cfg.kind == SoftDecoderKind::Dual ? load_checks(code, a.min_count, 0) : CheckSet{};
    const auto rec = run_soft_campaign(code, cs, cfg, parse_real_list(a.ebn0.empty() ? "3" : a.ebn0), opt);
    emit_campaign(a, "sim-soft", spec, rec, opt, {},
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return Ok;
}

int cmd_plan_flips(const SimArgs& a, const std::string& a_matrix, long long budget, const std::string& a_out) {
    AMatrix A;
    std::optional<CodeSpec> spec;
    if (!a_matrix.empty()) {
        std::ifstream in(a_matrix);
        if (!in) throw ConfigError("cannot open A-matrix " + a_matrix);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw Error(ErrorCode::Parse, std::string("A-matrix: ") + e.what());
        }
        A = a_matrix_from_json(j);
    } else {
        spec = read_spec(a.spec);
        const auto code = spec->build();
        if (a.trials < 1) throw ConfigError("--trials must be positive");
        const auto cfg = soft_config(a, code);
        const double snr = parse_real_list(a.ebn0.empty() ? "3" : a.ebn0).front();
        const CheckSet cs = cfg.kind == SoftDecoderKind::Chan ? CheckSet{} : cfg.kind == SoftDecoderKind::H
                                                                             ? check_polynomial_set(code)
                                                                             : load_checks(code, a.min_count, 0);
        const SoftDecoder dec(code, cs, cfg);
        A = simulate_A(code, dec.rotations(), snr, dec.decoder_config(1.0), a.trials, a.seed);
        A.checks_id = cfg.kind == SoftDecoderKind::Chan ? 0 : check_set_id(cs);
        if (!a_out.empty()) write_file(a_out, a_matrix_to_json(A).dump() + "\n");
    }
    const auto res = plan_flips(A, budget);
    std::cout << "patterns: " << res.plan.size() << " (budget " << budget << ")\n";
    for (const auto& f : res.plan.families) std::cout << "  weight " << f.weight << " on the " << f.tail << " least reliable\n";
    std::cout << "A mass: " << A.total_mass() << "\nWER_est: " << res.wer_est << '\n';
    auto j = manifest_base("plan-flips", spec ? &*spec : nullptr, a.seed);
    j["budget"] = budget;
    j["wer_est"] = res.wer_est;
    j["a_mass"] = A.total_mass();
    j["a_trials"] = A.trials;
    j["plan"] = flip_plan_to_json(res.plan);
    if (!a.out.empty()) write_file(a.out, j.dump(2) + "\n");
    return Ok;
}

int cmd_rm_verify(int r, int m, std::uint32_t prim, long long trials, std::uint64_t seed) {
    if (m < 2 || m > 10 || r < 0 || r >= m) throw ConfigError("need 0 <= r < m <= 10");
    if (prim == 0) prim = BinaryField::default_primitive_poly(m);
    const bool eq = verify_rm_equivalence(m, r, prim);
    const bool cyc = verify_rmstar_cyclic(m, r, prim, trials, seed);
    const bool roots = verify_generator_roots(m, r, prim);
    const bool ident = root_count_identity(m, r);
    std::cout << "R(" << r << "," << m << ") vs BCH leaders {" << join(rm_coset_leaders(m, r)) << "}, k=" << rm_dimension(m, r)
              << '\n'
              << "equivalent: " << (eq ? "true" : "false") << '\n'
              << "cyclic: " << (cyc ? "true" : "false") << '\n'
              << "generator roots: " << (roots ? "true" : "false") << '\n'
              << "root count identity: " << (ident ? "true" : "false") << '\n';
    return eq && cyc && roots && ident ? Ok : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Binary BCH code workbench: construction, dual-word reliability decoders, simulation"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    SearchArgs search;
    auto* cs = app.add_subcommand("code-search", "enumerate coset selections of a given dimension");
    cs->add_option("--m", search.m, "extension degree")->required();
    cs->add_option("--k", search.k, "dimension")->required();
    cs->add_flag("--best", search.best, "list the selections with the largest designed distance");
    cs->add_flag("--list", search.list, "list every selection");
    cs->add_flag("--properties", search.properties, "add minimum distances of the code and its dual");
    cs->add_option("--limit", search.limit, "print at most this many selections");

    std::string spec;
    std::uint64_t budget = 0;
    int min_count = 1;
    std::string out;
    auto* ci = app.add_subcommand("code-info", "parameters, distances and check statistics of one code");
    ci->add_option("--spec", spec, "code spec JSON file or inline JSON")->required();
    ci->add_option("--budget", budget, "enumeration budget per search (0 = unlimited)");
    ci->add_option("--min-count", min_count, "minimum number of checks");

    auto* ch = app.add_subcommand("checks", "mine low-weight dual codewords (cached in BCHLAB_CACHE_DIR)");
    ch->add_option("--spec", spec, "code spec")->required();
    ch->add_option("--budget", budget, "enumeration budget per search (0 = unlimited)");
    ch->add_option("--min-count", min_count, "minimum number of checks");
    ch->add_option("--out", out, "output JSON file (default stdout)");

    SimArgs sim;
    auto common_sim = [&](CLI::App* s) {
        s->add_option("--spec", sim.spec, "code spec")->required();
        s->add_option("--seed", sim.seed, "campaign seed");
        s->add_option("--trials", sim.trials, "trials per point");
        s->add_option("--max-trials", sim.max_trials, "extend points until --min-failures or this many trials");
        s->add_option("--min-failures", sim.min_failures, "failure target for extension");
        s->add_option("--workers", sim.workers, "worker threads");
        s->add_option("--flip-weight", sim.flip_weight, "flip patterns of weight up to this");
        s->add_option("--flip-plan", sim.flip_plan, "flip plan JSON (from plan-flips)");
        s->add_option("--min-count", sim.min_count, "minimum number of checks");
        s->add_option("--out", sim.out, "CSV output; the manifest goes to <out>.json");
    };
    auto* sh = app.add_subcommand("sim-hard", "fixed-weight error campaign");
    common_sim(sh);
    sh->add_option("--decoder", sim.decoder, "erd | isd | rsd | bdd")->default_val("isd");
    sh->add_option("--tau", sim.tau, "error weights, e.g. 1-14 or 3,5,7");
    sh->add_option("--mu", sim.mu, "RSD redundancy columns (0 = default)");
    sh->add_option("--shifts", sim.shifts, "RSD shift count");
    sh->add_option("--flip-budget", sim.flip_budget, "RSD extra flips per shift");
    sh->add_option("--maxflip", sim.maxflip, "ERD flips per iteration");
    sh->add_option("--max-iter", sim.max_iter, "ERD iterations (0 = n)");
    sh->add_option("--radius", sim.radius, "BDD radius");
    sh->add_option("--wer-p", sim.wer_p, "BSC crossover values for the WER table");

    auto soft_opts = [&](CLI::App* s) {
        s->add_option("--decoder", sim.decoder, "isd-chan | isd-dual | isd-h")->default_val("isd-dual");
        s->add_option("--ebn0", sim.ebn0, "Eb/N0 in dB: list or start:stop:step");
        s->add_option("--alpha", sim.alpha, "extrinsic damping");
        s->add_option("--T", sim.T, "reliability filter size");
        s->add_option("--metric", sim.metric, "channel | combined");
    };
    auto* ss = app.add_subcommand("sim-soft", "BPSK/AWGN campaign");
    common_sim(ss);
    soft_opts(ss);

    std::string a_matrix, a_out;
    long long plan_budget = 100;
    auto* pf = app.add_subcommand("plan-flips", "flip plan from an A-matrix");
    pf->add_option("--a-matrix", a_matrix, "A-matrix JSON; otherwise simulated from --spec");
    pf->add_option("--spec", sim.spec, "code spec");
    pf->add_option("--seed", sim.seed, "seed");
    pf->add_option("--trials", sim.trials, "trials for the A-matrix");
    pf->add_option("--min-count", sim.min_count, "minimum number of checks");
    pf->add_option("--budget", plan_budget, "number of patterns including the zero pattern")->check(CLI::PositiveNumber);
    pf->add_option("--save-a", a_out, "write the simulated A-matrix here");
    pf->add_option("--out", sim.out, "plan JSON output");
    soft_opts(pf);

    int rm_r = 1, rm_m = 3;
    std::uint32_t rm_prim = 0;
    long long rm_trials = 500;
    auto* rv = app.add_subcommand("rm-verify", "check R(r,m) against the extended, permuted BCH code");
    rv->add_option("r", rm_r, "order")->required();
    rv->add_option("m", rm_m, "log length")->required();
    rv->add_option("--prim-poly", rm_prim, "primitive polynomial as an integer (default per m)");
    rv->add_option("--trials", rm_trials, "sampled codewords for the cyclicity check");
    rv->add_option("--seed", sim.seed, "seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : Config;
    }

    try {
        if (*cs) return cmd_code_search(search);
        if (*ci) return cmd_code_info(spec, budget, min_count);
        if (*ch) return cmd_checks(spec, budget, min_count, out);
        if (*sh) return cmd_sim_hard(sim);
        if (*ss) return cmd_sim_soft(sim);
        if (*pf) return cmd_plan_flips(sim, a_matrix, plan_budget, a_out);
        if (*rv) return cmd_rm_verify(rm_r, rm_m, rm_prim, rm_trials, sim.seed);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Config;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.code()) {
        case ErrorCode::InsufficientChecks: return Budget;
        case ErrorCode::InvalidArgument:
        case ErrorCode::InvalidLeader:
        case ErrorCode::Parse:
        case ErrorCode::NotPrimitive:
        case ErrorCode::BadLength: return Config;
        default: return 1;
        }
    }
    return Ok;
}
