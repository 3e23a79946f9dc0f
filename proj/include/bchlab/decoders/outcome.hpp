#ifndef BCHLAB_DECODERS_OUTCOME_HPP
#define BCHLAB_DECODERS_OUTCOME_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bchlab/error.hpp"
#include "bchlab/gf2/cyclic_word.hpp"

namespace bchlab {

enum class DecodeStatus { Success, Failure };

struct DecodeOutcome {
    std::optional<CyclicWord> best;
    std::vector<CyclicWord> list; // every candidate found at the minimum distance
    int est_errors = -1;          // distance from the input to best
    DecodeStatus status = DecodeStatus::Failure;
    long long work = 0;           // iterations (ERD) or patterns evaluated (list decoders)

    bool success() const noexcept { return status == DecodeStatus::Success; }
    bool contains(const CyclicWord& c) const { return std::find(list.begin(), list.end(), c) != list.end(); }
};

enum class FlipPlanKind { ByWeight, Planned };

/// Tail family: every pattern of `weight` flips among the `tail` least reliable
/// information positions.
struct FlipFamily {
    int weight = 0;
    int tail = 0;
    friend bool operator==(const FlipFamily&, const FlipFamily&) = default;
};

/// Flip patterns over information-set ranks (0 = most reliable pivot).
/// The zero pattern always comes first.
struct FlipPlan {
    int k = 0;
    FlipPlanKind kind = FlipPlanKind::ByWeight;
    int max_weight = 0;                   // ByWeight
    std::vector<FlipFamily> families;     // Planned
    std::vector<std::vector<int>> patterns;

    std::size_t size() const noexcept { return patterns.size(); }

    void validate() const {
        if (patterns.empty() || !patterns.front().empty())
            throw Error(ErrorCode::InvalidArgument, "flip plan must start with the zero pattern");
        std::set<std::vector<int>> seen;
        for (const auto& p : patterns) {
            for (std::size_t i = 0; i < p.size(); ++i) {
                if (p[i] < 0 || p[i] >= k) throw Error(ErrorCode::InvalidArgument, "flip index out of range");
                if (i > 0 && p[i] <= p[i - 1]) throw Error(ErrorCode::InvalidArgument, "flip indices must increase");
            }
            if (!seen.insert(p).second) throw Error(ErrorCode::InvalidArgument, "duplicate flip pattern");
        }
    }
};

namespace detail {

// all increasing index tuples of size w drawn from [lo, hi), lexicographic
inline void append_combinations(std::vector<std::vector<int>>& out, int lo, int hi, int w) {
    if (w == 0) {
        out.emplace_back();
        return;
    }
    if (hi - lo < w) return;
    std::vector<int> idx(static_cast<std::size_t>(w));
    for (int i = 0; i < w; ++i) idx[static_cast<std::size_t>(i)] = lo + i;
    while (true) {
        out.push_back(idx);
        int i = w - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == hi - w + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < w; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

} // namespace detail

inline FlipPlan make_flip_plan_by_weight(int k, int max_w) {
    if (k < 0 || max_w < 0 || max_w > k) throw Error(ErrorCode::InvalidArgument, "flip weight must lie in [0, k]");
    FlipPlan plan;
    plan.k = k;
    plan.kind = FlipPlanKind::ByWeight;
    plan.max_weight = max_w;
    for (int w = 0; w <= max_w; ++w) detail::append_combinations(plan.patterns, 0, k, w);
    return plan;
}

/// Zero pattern followed by each tail family in the given order.
inline FlipPlan make_flip_plan_from_families(int k, std::vector<FlipFamily> families) {
    FlipPlan plan;
    plan.k = k;
    plan.kind = FlipPlanKind::Planned;
    plan.patterns.emplace_back();
    for (const auto& f : families) {
        if (f.weight < 1 || f.tail < f.weight || f.tail > k)
            throw Error(ErrorCode::InvalidArgument, "invalid flip family");
        detail::append_combinations(plan.patterns, k - f.tail, k, f.weight);
    }
    plan.families = std::move(families);
    return plan;
}

inline nlohmann::json flip_plan_to_json(const FlipPlan& plan) {
    nlohmann::json j{{"k", plan.k},
                     {"kind", plan.kind == FlipPlanKind::ByWeight ? "by_weight" : "planned"},
                     {"size", plan.size()}};
    if (plan.kind == FlipPlanKind::ByWeight) {
        j["max_weight"] = plan.max_weight;
    } else {
        j["families"] = nlohmann::json::array();
        for (const auto& f : plan.families) j["families"].push_back({{"weight", f.weight}, {"tail", f.tail}});
    }
    j["patterns"] = plan.patterns;
    return j;
}

inline FlipPlan flip_plan_from_json(const nlohmann::json& j) {
    FlipPlan plan;
    try {
        plan.k = j.at("k").get<int>();
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "by_weight") {
            plan.kind = FlipPlanKind::ByWeight;
            plan.max_weight = j.value("max_weight", 0);
        } else if (kind == "planned") {
            plan.kind = FlipPlanKind::Planned;
            for (const auto& f : j.value("families", nlohmann::json::array()))
                plan.families.push_back({f.at("weight").get<int>(), f.at("tail").get<int>()});
        } else {
            throw Error(ErrorCode::Parse, "unknown flip plan kind '" + kind + "'");
        }
        plan.patterns = j.at("patterns").get<std::vector<std::vector<int>>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("flip plan: ") + e.what());
    }
    plan.validate();
    return plan;
}

} // namespace bchlab

#endif // BCHLAB_DECODERS_OUTCOME_HPP
