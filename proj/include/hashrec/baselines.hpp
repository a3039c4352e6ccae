#pragma once

// Frequency and recency baselines. Each isolates one signal that BLL fuses:
// global / own / followee usage counts, or time since the last own use.

#include <string_view>
#include <unordered_map>
#include <vector>

#include "hashrec/corpus.hpp"
#include "hashrec/ranking.hpp"
#include "hashrec/usage_index.hpp"

namespace hashrec {

// Most popular overall, counting uses strictly before `now`.
inline ScoredList mp_global(const UsageIndex& index, Timestamp now, std::size_t k) {
    require_positive_k(k);
    std::vector<Candidate> candidates;
    for (const auto& tag : index.hashtags()) {
        auto n = count_before(tag.uses, now);
        if (n > 0) candidates.push_back(Candidate{tag.hashtag, static_cast<double>(n)});
    }
    return top_k(std::move(candidates), k);
}

// Most popular in the user's own history.
inline ScoredList mp_user(const UsageIndex& index, std::string_view user, Timestamp now, std::size_t k) {
    require_positive_k(k);
    std::vector<Candidate> candidates;
    if (const auto* history = index.user_history(user)) {
        for (const auto& tag : history->tags) {
            auto n = count_before(tag.times, now);
            if (n > 0) candidates.push_back(Candidate{tag.hashtag, static_cast<double>(n)});
        }
    }
    return top_k(std::move(candidates), k);
}

// Most popular among the user's followees, uses pooled.
inline ScoredList mp_social(const UsageIndex& index, const FollowGraph& graph, std::string_view user,
                            Timestamp now, std::size_t k) {
    require_positive_k(k);
    std::unordered_map<std::string_view, std::size_t> counts;
    for (const auto& followee : graph.followees(user)) {
        const auto* history = index.user_history(followee);
        if (!history) continue;
        for (const auto& tag : history->tags)
            if (auto n = count_before(tag.times, now); n > 0) counts[tag.hashtag] += n;
    }
    std::vector<Candidate> candidates;
    candidates.reserve(counts.size());
    for (const auto& [tag, n] : counts) candidates.push_back(Candidate{tag, static_cast<double>(n)});
    return top_k(std::move(candidates), k);
}

// User's own hashtags by most recent use; score = -(seconds since last use).
inline ScoredList most_recent(const UsageIndex& index, std::string_view user, Timestamp now, std::size_t k) {
    require_positive_k(k);
    std::vector<Candidate> candidates;
    if (const auto* history = index.user_history(user)) {
        for (const auto& tag : history->tags) {
            auto n = count_before(tag.times, now);
            if (n == 0) continue;
            auto age = now.seconds - tag.times[n - 1].seconds;
            candidates.push_back(Candidate{tag.hashtag, -static_cast<double>(age)});
        }
    }
    return top_k(std::move(candidates), k);
}

} // namespace hashrec
