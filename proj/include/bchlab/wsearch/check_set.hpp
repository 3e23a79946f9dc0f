#ifndef BCHLAB_WSEARCH_CHECK_SET_HPP
#define BCHLAB_WSEARCH_CHECK_SET_HPP

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bchlab/codes/bch_code.hpp"
#include "bchlab/codes/code_spec.hpp"
#include "bchlab/error.hpp"
#include "bchlab/gf2/poly.hpp"
#include "bchlab/wsearch/search.hpp"

namespace bchlab {

enum class SubcodeKind { ProperDual, SubcodeOnly };

struct SubcodeInfo {
    SubcodeKind kind;
    Poly h_l; // gcd(b, x^n - 1)
};

/// A dual codeword b only "sees" the code generated by g_l = (x^n-1)/gcd(b, x^n-1).
inline SubcodeInfo classify_subcode(const CyclicWord& b, const BchCode& code) {
    code.check_length(b);
    const Poly bp = b.to_poly();
    if (!(bp % code.check_poly()).is_zero())
        throw Error(ErrorCode::NotDualCodeword, "h(x) does not divide b(x)");
    Poly hl = poly_gcd(bp.is_zero() ? Poly::xn_minus_one(code.n()) : bp, Poly::xn_minus_one(code.n()));
    return {hl == code.check_poly() ? SubcodeKind::ProperDual : SubcodeKind::SubcodeOnly, std::move(hl)};
}

/// Cyclically distinct low-weight dual codewords, each with bit 0 set.
struct CheckSet {
    int n = 0;
    std::vector<CyclicWord> checks;
    std::vector<int> weights;
    int delta_perp = 0;
    std::map<int, int> per_weight;  // weight -> number of checks used
    int w_add = 0;                  // supplementary weight class (0 if none)
    int L_add = 0;
    bool exhaustive = false;        // every weight class used was enumerated completely
    Poly joint_check;               // gcd(x^n - 1, all checks)

    int L() const noexcept { return static_cast<int>(checks.size()); }
    bool uniform() const noexcept {
        for (int w : weights)
            if (w != weights.front()) return false;
        return true;
    }
    /// Sum of the check weights; the largest value Phi_j can take.
    int total_weight() const noexcept {
        int s = 0;
        for (int w : weights) s += w;
        return s;
    }
    void push(CyclicWord c) {
        weights.push_back(c.weight());
        ++per_weight[c.weight()];
        checks.push_back(std::move(c));
    }
};

/// Check set from explicitly given dual codewords (orbit duplicates removed).
inline CheckSet make_check_set(const BchCode& code, const std::vector<CyclicWord>& words) {
    CheckSet cs;
    cs.n = code.n();
    cs.joint_check = Poly::xn_minus_one(code.n());
    for (const auto& w : words) (void)classify_subcode(w, code);
    for (auto& r : cyclic_orbit_reps(words)) {
        cs.joint_check = poly_gcd(cs.joint_check, r.to_poly());
        cs.push(std::move(r));
    }
    cs.delta_perp = cs.weights.empty() ? 0 : *std::min_element(cs.weights.begin(), cs.weights.end());
    cs.exhaustive = false;
    return cs;
}

struct CheckSetOptions {
    int min_count = 1;
    int max_weight = 0;              // 0 = no limit
    SearchOptions search;            // its budget bounds each exhaustive enumeration
    bool allow_probabilistic = true; // fall back to random information sets when the budget runs out
    IsdSearchOptions isd;
};

/// Minimal-weight dual orbits, supplemented by heavier classes while the checks
/// collectively span only a supercode (gcd(x^n-1, checks) != h) or fewer than
/// min_count checks are present. A supplement takes the orbits of the next
/// weight that are not divisible by the current joint gcd; when only the count
/// is short, ProperDual orbits are taken before the others.
inline CheckSet build_check_set(const BchCode& code, const CheckSetOptions& opt = {}) {
    const BchCode dual = dual_code(code);
    const int n = code.n();
    const int wmax = opt.max_weight > 0 ? std::min(opt.max_weight, n) : n;
    if (dual.k() == 0) throw Error(ErrorCode::InsufficientChecks, "dual code is trivial");

    CheckSet cs;
    cs.n = n;
    auto d = min_weight_search(dual, opt.search);
    bool exhaustive = d.exhaustive;
    std::vector<CyclicWord> first = d.orbits;
    cs.delta_perp = d.min_weight;
    if (!d.exhaustive && opt.allow_probabilistic) {
        auto p = random_isd_orbits(dual, 0, opt.isd);
        if (!p.by_weight.empty()) {
            auto& [w, reps] = *p.by_weight.begin();
            if (w < cs.delta_perp) {
                cs.delta_perp = w;
                first = reps;
            } else if (w == cs.delta_perp) {
                first.insert(first.end(), reps.begin(), reps.end());
                first = cyclic_orbit_reps(first);
            }
        }
    }
    if (cs.delta_perp > wmax) throw Error(ErrorCode::InsufficientChecks, "dual distance exceeds max weight");

    auto weight_class = [&](int w) {
        auto c = enumerate_orbits(dual, w, w, opt.search);
        if (!c.exhaustive) {
            exhaustive = false;
            if (opt.allow_probabilistic) {
                auto p = random_isd_orbits(dual, w, opt.isd);
                auto& reps = c.by_weight[w];
                reps.insert(reps.end(), p.by_weight[w].begin(), p.by_weight[w].end());
                reps = cyclic_orbit_reps(reps);
            }
        }
        return std::move(c.by_weight[w]);
    };

    Poly joint = Poly::xn_minus_one(n);
    for (auto& b : first) {
        joint = poly_gcd(joint, b.to_poly());
        cs.push(std::move(b));
    }
    for (int w = cs.delta_perp + 1; w <= wmax; ++w) {
        const bool spans = joint == code.check_poly();
        if (spans && cs.L() >= opt.min_count) break;
        auto cls = weight_class(w);
        if (cls.empty()) continue;
        std::vector<CyclicWord> take;
        if (!spans) {
            for (auto& b : cls)
                if (!(b.to_poly() % joint).is_zero()) take.push_back(b);
        } else {
            for (auto& b : cls)
                if (classify_subcode(b, code).kind == SubcodeKind::ProperDual) take.push_back(b);
            if (cs.L() + static_cast<int>(take.size()) < opt.min_count)
                for (auto& b : cls)
                    if (classify_subcode(b, code).kind == SubcodeKind::SubcodeOnly) take.push_back(b);
        }
        if (take.empty()) continue;
        cs.w_add = w;
        cs.L_add += static_cast<int>(take.size());
        for (auto& b : take) {
            joint = poly_gcd(joint, b.to_poly());
            cs.push(std::move(b));
        }
    }
    cs.joint_check = joint;
    cs.exhaustive = exhaustive;
    if (!(joint == code.check_poly()) || cs.L() < opt.min_count)
        throw Error(ErrorCode::InsufficientChecks,
                    "only " + std::to_string(cs.L()) + " checks up to weight " + std::to_string(wmax));
    return cs;
}

// ---- check cache -----------------------------------------------------------

inline nlohmann::json check_set_to_json(const CheckSet& cs, const std::string& code_hash) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : cs.checks) checks.push_back(c.support());
    return {{"code", code_hash}, {"n", cs.n},         {"delta_perp", cs.delta_perp}, {"checks", checks},
            {"weights", cs.weights}, {"w_add", cs.w_add}, {"L_add", cs.L_add},   {"exhaustive", cs.exhaustive}};
}

/// Rebuilds a cached check set, re-verifying that every entry is a dual codeword.
inline CheckSet check_set_from_json(const nlohmann::json& j, const BchCode& code) {
    CheckSet cs;
    try {
        cs.n = j.at("n").get<int>();
        if (cs.n != code.n()) throw Error(ErrorCode::LengthMismatch, "cached checks have wrong length");
        cs.joint_check = Poly::xn_minus_one(cs.n);
        for (const auto& s : j.at("checks")) {
            auto w = CyclicWord::from_exponents(cs.n, s.get<std::vector<int>>());
            (void)classify_subcode(w, code);
            cs.joint_check = poly_gcd(cs.joint_check, w.to_poly());
            cs.push(std::move(w));
        }
        cs.delta_perp = j.at("delta_perp").get<int>();
        cs.w_add = j.value("w_add", 0);
        cs.L_add = j.value("L_add", 0);
        cs.exhaustive = j.at("exhaustive").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("check cache: ") + e.what());
    }
    return cs;
}

inline std::filesystem::path check_cache_path(const std::filesystem::path& dir, const BchCode& code, int min_count = 1) {
    std::string name = "checks-" + CodeSpec::of(code).hash();
    if (min_count > 1) name += "-c" + std::to_string(min_count);
    return dir / (name + ".json");
}

/// Directory from BCHLAB_CACHE_DIR, if set and non-empty.
inline std::optional<std::filesystem::path> cache_dir_from_env() {
    const char* v = std::getenv("BCHLAB_CACHE_DIR");
    if (!v || !*v) return std::nullopt;
    return std::filesystem::path(v);
}

inline std::optional<CheckSet> load_check_cache(const std::filesystem::path& file, const BchCode& code) {
    std::ifstream in(file);
    if (!in) return std::nullopt;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;
    }
    if (j.value("code", std::string{}) != CodeSpec::of(code).hash()) return std::nullopt;
    return check_set_from_json(j, code);
}

inline void save_check_cache(const std::filesystem::path& file, const CheckSet& cs, const BchCode& code) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + file.string());
    out << check_set_to_json(cs, CodeSpec::of(code).hash()).dump() << '\n';
}

/// build_check_set with a disk cache keyed by the code-spec hash.
inline CheckSet cached_check_set(const BchCode& code, const CheckSetOptions& opt,
                                 const std::optional<std::filesystem::path>& dir) {
    if (dir) {
        if (auto hit = load_check_cache(check_cache_path(*dir, code, opt.min_count), code)) return *hit;
    }
    auto cs = build_check_set(code, opt);
    if (dir) save_check_cache(check_cache_path(*dir, code, opt.min_count), cs, code);
    return cs;
}

} // namespace bchlab

#endif // BCHLAB_WSEARCH_CHECK_SET_HPP
