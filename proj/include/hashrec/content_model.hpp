#pragma once

// Content-based hashtag scoring from the text of the tweet being written,
// and the hybrid BLL_I,S,C recommender.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hashrec/bll.hpp"
#include "hashrec/corpus.hpp"
#include "hashrec/ranking.hpp"

namespace hashrec {

struct TokenHashtagProfile {
    std::size_t doc_count = 0;  // training tweets with at least one token
    std::map<std::string, std::size_t, std::less<>> df;
    // token -> hashtag -> number of training tweets carrying both
    std::map<std::string, std::map<std::string, std::size_t, std::less<>>, std::less<>> assoc;
};

inline TokenHashtagProfile build_profiles(std::span<const Tweet> train) {
    TokenHashtagProfile profile;
    std::vector<std::string_view> distinct;
    for (const auto& tweet : train) {
        if (!tweet.tokens || tweet.tokens->empty()) continue;
        ++profile.doc_count;
        distinct.assign(tweet.tokens->begin(), tweet.tokens->end());
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (auto token : distinct) {
            auto df_it = profile.df.find(token);
            if (df_it == profile.df.end()) df_it = profile.df.emplace(std::string(token), 0).first;
            ++df_it->second;
            if (tweet.hashtags.empty()) continue;
            auto as_it = profile.assoc.find(token);
            if (as_it == profile.assoc.end()) as_it = profile.assoc.emplace(std::string(token), std::map<std::string, std::size_t, std::less<>>{}).first;
            for (const auto& tag : tweet.hashtags) ++as_it->second[tag];
        }
    }
    return profile;
}

inline TokenHashtagProfile build_profiles(const Corpus& train) { return build_profiles(train.tweets); }

// ln(doc_count / df). nullopt when the token never occurred in training.
inline std::optional<double> idf(const TokenHashtagProfile& profile, std::string_view token) {
    auto it = profile.df.find(token);
    if (it == profile.df.end()) return std::nullopt;
    return std::log(static_cast<double>(profile.doc_count) / static_cast<double>(it->second));
}

// score(h) = sum over distinct tokens w of tf(w) * idf(w) * P(h | w), where
// P(h | w) is w's co-occurrence count with h over all of w's co-occurrences.
// Unknown tokens and tokens with zero idf contribute nothing.
inline ScoreMap content_scores(const TokenHashtagProfile& profile, std::span<const std::string> tokens) {
    std::map<std::string_view, std::size_t> tf;
    for (const auto& tok : tokens) ++tf[tok];

    ScoreMap out;
    for (const auto& [token, count] : tf) {
        auto weight = idf(profile, token);
        if (!weight || *weight == 0.0) continue;
        auto as_it = profile.assoc.find(token);
        if (as_it == profile.assoc.end()) continue;
        std::size_t total = 0;
        for (const auto& [tag, c] : as_it->second) total += c;
        for (const auto& [tag, c] : as_it->second)
            out[tag] += static_cast<double>(count) * *weight * static_cast<double>(c) / static_cast<double>(total);
    }
    return out;
}

// lambda * BLL_I,S + (1 - lambda) * softmax(content) over the union, 0-filled.
inline ScoreMap bll_isc_scores(const UsageIndex& index, const FollowGraph& graph,
                               const TokenHashtagProfile& profile, std::string_view user, Timestamp now,
                               std::span<const std::string> tokens, const ActivationParams& params,
                               double lambda) {
    if (!(lambda >= 0 && lambda <= 1)) throw UsageError("lambda must be in [0,1]");
    auto bll = bll_is_scores(index, graph, user, now, params);
    auto content = normalize_softmax(content_scores(profile, tokens));
    ScoreMap out;
    for (const auto& [tag, v] : bll) out[tag] += lambda * v;
    for (const auto& [tag, v] : content) out[tag] += (1.0 - lambda) * v;
    return out;
}

inline ScoredList recommend_bll_isc(const UsageIndex& index, const FollowGraph& graph,
                                    const TokenHashtagProfile& profile, std::string_view user, Timestamp now,
                                    std::span<const std::string> tokens, const ActivationParams& params,
                                    double lambda, std::size_t k) {
    require_positive_k(k);
    return rank_top_k(bll_isc_scores(index, graph, profile, user, now, tokens, params, lambda), k);
}

} // namespace hashrec
