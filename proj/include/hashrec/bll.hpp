#pragma once

// Base-level learning (ACT-R) activation over individual and social hashtag
// histories, and the BLL_I,S recommender built from them.
//
// A hashtag used at ages t_1..t_n (time since each use) has activation
//
//     B = ln( sum_j t_j^(-d) )
//
// so both use frequency and use recency raise it, with power-law decay d.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hashrec/corpus.hpp"
#include "hashrec/error.hpp"
#include "hashrec/ranking.hpp"
#include "hashrec/usage_index.hpp"

namespace hashrec {

struct ActivationParams {
    double d_individual = 0.5;
    double d_social = 0.5;
    double beta = 0.5;      // weight of the individual component
    double min_age = 1.0;   // seconds; younger uses are clamped to this age

    void validate() const {
        std::string bad;
        auto check = [&](bool ok, const char* what) {
            if (!ok) bad += (bad.empty() ? "" : ", ") + std::string(what);
        };
        check(std::isfinite(d_individual) && d_individual > 0, "d_individual must be > 0");
        check(std::isfinite(d_social) && d_social > 0, "d_social must be > 0");
        check(std::isfinite(beta) && beta >= 0 && beta <= 1, "beta must be in [0,1]");
        check(std::isfinite(min_age) && min_age >= 1, "min_age must be >= 1");
        if (!bad.empty()) throw UsageError("invalid activation parameters: " + bad);
    }
};

// ln(sum age^-d), evaluated as a log-sum-exp over -d*ln(age) so very old or
// strongly decayed histories stay finite. Returns nullopt for an empty
// history: such a hashtag is not a candidate at all.
inline std::optional<double> base_level_activation(std::span<const double> ages, double d) {
    if (ages.empty()) return std::nullopt;
    if (!(std::isfinite(d) && d >= 0)) throw UsageError("decay exponent must be finite and >= 0");
    double peak = -std::numeric_limits<double>::infinity();
    for (double age : ages) {
        if (!(std::isfinite(age) && age > 0)) throw UsageError("use ages must be finite and > 0");
        peak = std::max(peak, -d * std::log(age));
    }
    double sum = 0.0;
    for (double age : ages) sum += std::exp(-d * std::log(age) - peak);
    return peak + std::log(sum);
}

namespace detail {

inline void append_ages(std::vector<double>& ages, std::span<const Timestamp> times, Timestamp now,
                        double min_age) {
    const auto n = count_before(times, now);
    for (std::size_t i = 0; i < n; ++i)
        ages.push_back(std::max(static_cast<double>(now.seconds - times[i].seconds), min_age));
}

} // namespace detail

// Activation of every hashtag the user applied strictly before `now`.
inline ScoreMap individual_activations(const UsageIndex& index, std::string_view user, Timestamp now,
                                       const ActivationParams& params) {
    ScoreMap out;
    const auto* history = index.user_history(user);
    if (!history) return out;
    std::vector<double> ages;
    for (const auto& tag : history->tags) {
        ages.clear();
        detail::append_ages(ages, tag.times, now, params.min_age);
        if (auto b = base_level_activation(ages, params.d_individual)) out.emplace_hint(out.end(), tag.hashtag, *b);
    }
    return out;
}

// Activation of hashtags used by any followee strictly before `now`, pooling
// every followee use of a hashtag into one history.
inline ScoreMap social_activations(const UsageIndex& index, const FollowGraph& graph, std::string_view user,
                                   Timestamp now, const ActivationParams& params) {
    std::map<std::string_view, std::vector<double>> pooled;
    for (const auto& followee : graph.followees(user)) {
        const auto* history = index.user_history(followee);
        if (!history) continue;
        for (const auto& tag : history->tags) {
            if (count_before(tag.times, now) == 0) continue;
            detail::append_ages(pooled[tag.hashtag], tag.times, now, params.min_age);
        }
    }
    ScoreMap out;
    for (const auto& [tag, ages] : pooled)
        if (auto b = base_level_activation(ages, params.d_social)) out.emplace_hint(out.end(), tag, *b);
    return out;
}

// exp(s - max) / sum exp(s - max).
inline ScoreMap normalize_softmax(const ScoreMap& scores) {
    ScoreMap out;
    if (scores.empty()) return out;
    double peak = -std::numeric_limits<double>::infinity();
    for (const auto& [tag, s] : scores) {
        if (!std::isfinite(s)) throw UsageError("softmax input for " + tag + " is not finite");
        peak = std::max(peak, s);
    }
    double total = 0.0;
    for (const auto& [tag, s] : scores) {
        double e = std::exp(s - peak);
        out.emplace_hint(out.end(), tag, e);
        total += e;
    }
    for (auto& [tag, v] : out) v /= total;
    return out;
}

// beta * individual + (1 - beta) * social over the union of keys, 0-filled.
inline ScoreMap mix_scores(const ScoreMap& individual, const ScoreMap& social, double beta) {
    if (!(beta >= 0 && beta <= 1)) throw UsageError("beta must be in [0,1]");
    ScoreMap out;
    for (const auto& [tag, v] : individual) out[tag] += beta * v;
    for (const auto& [tag, v] : social) out[tag] += (1.0 - beta) * v;
    return out;
}

// Unranked BLL_I,S scores: softmax each component, then mix.
inline ScoreMap bll_is_scores(const UsageIndex& index, const FollowGraph& graph, std::string_view user,
                              Timestamp now, const ActivationParams& params) {
    params.validate();
    return mix_scores(normalize_softmax(individual_activations(index, user, now, params)),
                      normalize_softmax(social_activations(index, graph, user, now, params)), params.beta);
}

inline ScoredList recommend_bll_is(const UsageIndex& index, const FollowGraph& graph, std::string_view user,
                                   Timestamp now, const ActivationParams& params, std::size_t k) {
    require_positive_k(k);
    return rank_top_k(bll_is_scores(index, graph, user, now, params), k);
}

} // namespace hashrec
