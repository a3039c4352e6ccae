#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hashrec/error.hpp"

namespace hashrec {

struct ScoredTag {
    std::string hashtag;
    double score = 0.0;

    bool operator==(const ScoredTag&) const = default;
};

// Descending score, ties ascending by hashtag. No duplicates, finite scores.
using ScoredList = std::vector<ScoredTag>;

using ScoreMap = std::map<std::string, double, std::less<>>;

struct Candidate {
    std::string_view hashtag;
    double score = 0.0;
};

inline bool ranks_before(std::string_view tag_a, double score_a, std::string_view tag_b, double score_b) {
    if (score_a != score_b) return score_a > score_b;
    return tag_a < tag_b;
}

inline void require_positive_k(std::size_t k) {
    if (k < 1) throw UsageError("k must be >= 1");
}

// Selects the best `k` candidates. Candidates must have distinct hashtags.
inline ScoredList top_k(std::vector<Candidate> candidates, std::size_t k) {
    require_positive_k(k);
    for (const auto& c : candidates)
        if (!std::isfinite(c.score)) throw DataError("non-finite score for hashtag " + std::string(c.hashtag));
    auto cmp = [](const Candidate& a, const Candidate& b) {
        return ranks_before(a.hashtag, a.score, b.hashtag, b.score);
    };
    const auto n = std::min(k, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(n),
                      candidates.end(), cmp);
    ScoredList out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(ScoredTag{std::string(candidates[i].hashtag), candidates[i].score});
    return out;
}

inline ScoredList rank_top_k(const ScoreMap& scores, std::size_t k) {
    std::vector<Candidate> candidates;
    candidates.reserve(scores.size());
    for (const auto& [tag, score] : scores) candidates.push_back(Candidate{tag, score});
    return top_k(std::move(candidates), k);
}

} // namespace hashrec
