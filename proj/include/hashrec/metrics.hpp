#pragma once

// Binary-relevance top-k metrics for a single query.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "hashrec/error.hpp"
#include "hashrec/ranking.hpp"

namespace hashrec {

class RelevantSet {
public:
    RelevantSet(std::initializer_list<std::string> items) : items_(items) { normalize(); }
    explicit RelevantSet(std::vector<std::string> items) : items_(std::move(items)) { normalize(); }

    bool contains(std::string_view tag) const { return std::binary_search(items_.begin(), items_.end(), tag); }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }

private:
    void normalize() {
        std::sort(items_.begin(), items_.end());
        items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
    }

    std::vector<std::string> items_;
};

inline std::size_t hits_at_k(const ScoredList& rec, const RelevantSet& relevant, std::size_t k) {
    const auto n = std::min(k, rec.size());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) hits += relevant.contains(rec[i].hashtag) ? 1 : 0;
    return hits;
}

// Denominator is k even when fewer than k items were recommended.
inline double precision_at_k(const ScoredList& rec, const RelevantSet& relevant, std::size_t k) {
    require_positive_k(k);
    return static_cast<double>(hits_at_k(rec, relevant, k)) / static_cast<double>(k);
}

inline double recall_at_k(const ScoredList& rec, const RelevantSet& relevant, std::size_t k) {
    require_positive_k(k);
    if (relevant.empty()) throw UsageError("recall is undefined for an empty relevant set");
    return static_cast<double>(hits_at_k(rec, relevant, k)) / static_cast<double>(relevant.size());
}

inline double f1_at_k(const ScoredList& rec, const RelevantSet& relevant, std::size_t k) {
    const double p = precision_at_k(rec, relevant, k);
    const double r = recall_at_k(rec, relevant, k);
    return (p + r) > 0 ? 2.0 * p * r / (p + r) : 0.0;
}

// 1 / rank of the first relevant item; 0 if none is recommended.
inline double reciprocal_rank(const ScoredList& rec, const RelevantSet& relevant) {
    for (std::size_t i = 0; i < rec.size(); ++i)
        if (relevant.contains(rec[i].hashtag)) return 1.0 / static_cast<double>(i + 1);
    return 0.0;
}

// AP truncated at k: sum of precision at each relevant rank, over min(|relevant|, k).
inline double average_precision(const ScoredList& rec, const RelevantSet& relevant, std::size_t k) {
    require_positive_k(k);
    if (relevant.empty()) throw UsageError("average precision is undefined for an empty relevant set");
    const auto n = std::min(k, rec.size());
    std::size_t hits = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!relevant.contains(rec[i].hashtag)) continue;
        ++hits;
        sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
    return sum / static_cast<double>(std::min(relevant.size(), k));
}

inline double ndcg_at_k(const ScoredList& rec, const RelevantSet& relevant, std::size_t k) {
    require_positive_k(k);
    if (relevant.empty()) throw UsageError("nDCG is undefined for an empty relevant set");
    const auto n = std::min(k, rec.size());
    double dcg = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (relevant.contains(rec[i].hashtag)) dcg += 1.0 / std::log2(static_cast<double>(i + 2));
    double ideal = 0.0;
    for (std::size_t i = 0; i < std::min(relevant.size(), k); ++i) ideal += 1.0 / std::log2(static_cast<double>(i + 2));
    return dcg / ideal;
}

} // namespace hashrec
