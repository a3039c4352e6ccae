#pragma once

// Descriptive analysis of hashtag reuse: who used an assigned hashtag before
// (the user, a followee, anyone, no one), how long ago, and log-log power-law
// fits of the resulting reuse-age distributions.
//
// "Before" is strict throughout: uses sharing the assignment's timestamp do
// not count, so a tweet never explains its own hashtags.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hashrec/corpus.hpp"
#include "hashrec/error.hpp"
#include "hashrec/usage_index.hpp"

namespace hashrec {

enum class ReuseCategory { Individual, Social, IndividualSocial, Network, External };

inline constexpr std::array<ReuseCategory, 5> kAllReuseCategories{
    ReuseCategory::Individual, ReuseCategory::Social, ReuseCategory::IndividualSocial, ReuseCategory::Network,
    ReuseCategory::External};

inline std::string_view to_string(ReuseCategory c) {
    switch (c) {
        case ReuseCategory::Individual: return "individual";
        case ReuseCategory::Social: return "social";
        case ReuseCategory::IndividualSocial: return "individual_social";
        case ReuseCategory::Network: return "network";
        case ReuseCategory::External: return "external";
    }
    return "unknown";
}

inline ReuseCategory classify(bool own, bool followee, bool anyone) {
    if (own && followee) return ReuseCategory::IndividualSocial;
    if (own) return ReuseCategory::Individual;
    if (followee) return ReuseCategory::Social;
    return anyone ? ReuseCategory::Network : ReuseCategory::External;
}

// Categorizes one assignment against the index's events strictly before `t`.
// Later events in the index are ignored.
inline ReuseCategory categorize_assignment(const UsageIndex& index, const FollowGraph& graph,
                                           std::string_view user, std::string_view hashtag, Timestamp t) {
    const bool own = count_before(index.uses(user, hashtag), t) > 0;
    bool followee = false;
    for (const auto& f : graph.followees(user)) {
        if (count_before(index.uses(f, hashtag), t) > 0) {
            followee = true;
            break;
        }
    }
    const bool anyone = count_before(index.global_uses(hashtag), t) > 0;
    return classify(own, followee, anyone);
}

namespace detail {

// Calls visit(tweet, hashtag) for every assignment of a timestamp group, then
// commit(tweet, hashtag) for the same group, so state updated in commit is
// only visible to strictly later timestamps.
template <typename Visit, typename Commit>
void for_each_assignment_grouped(const Corpus& corpus, Visit&& visit, Commit&& commit) {
    const auto& tweets = corpus.tweets;
    std::size_t begin = 0;
    while (begin < tweets.size()) {
        std::size_t end = begin;
        while (end < tweets.size() && tweets[end].time == tweets[begin].time) ++end;
        for (std::size_t i = begin; i < end; ++i)
            for (const auto& tag : tweets[i].hashtags) visit(tweets[i], tag);
        for (std::size_t i = begin; i < end; ++i)
            for (const auto& tag : tweets[i].hashtags) commit(tweets[i], tag);
        begin = end;
    }
}

} // namespace detail

// One label per assignment, in corpus order (tweets chronological, hashtags
// sorted within a tweet). Single pass over the corpus.
inline std::vector<ReuseCategory> categorize_stream(const Corpus& corpus) {
    std::unordered_map<std::string_view, std::unordered_set<std::string_view>> users_of;
    std::vector<ReuseCategory> labels;
    detail::for_each_assignment_grouped(
        corpus,
        [&](const Tweet& tweet, const std::string& tag) {
            auto it = users_of.find(tag);
            if (it == users_of.end()) {
                labels.push_back(ReuseCategory::External);
                return;
            }
            const auto& users = it->second;
            const auto& followees = corpus.graph.followees(tweet.user_id);
            bool followee = false;
            if (followees.size() <= users.size()) {
                for (const auto& f : followees)
                    if (users.contains(f)) { followee = true; break; }
            } else {
                for (auto u : users)
                    if (followees.contains(u)) { followee = true; break; }
            }
            labels.push_back(classify(users.contains(tweet.user_id), followee, true));
        },
        [&](const Tweet& tweet, const std::string& tag) { users_of[tag].insert(tweet.user_id); });
    return labels;
}

struct CategoryShare {
    std::uint64_t count = 0;
    double share = 0.0;
};

using CategoryDistribution = std::array<std::pair<ReuseCategory, CategoryShare>, 5>;

inline CategoryDistribution category_distribution(const Corpus& corpus) {
    CategoryDistribution dist{};
    for (std::size_t i = 0; i < kAllReuseCategories.size(); ++i) dist[i].first = kAllReuseCategories[i];
    auto labels = categorize_stream(corpus);
    for (auto c : labels) ++dist[static_cast<std::size_t>(c)].second.count;
    if (!labels.empty())
        for (auto& [c, s] : dist) s.share = static_cast<double>(s.count) / static_cast<double>(labels.size());
    return dist;
}

enum class ReuseKind { Individual, Social };

enum class TimeUnit { Seconds, Hours, Days };

inline double seconds_per(TimeUnit unit) {
    switch (unit) {
        case TimeUnit::Seconds: return 1.0;
        case TimeUnit::Hours: return 3600.0;
        case TimeUnit::Days: return 86400.0;
    }
    return 1.0;
}

inline std::string_view to_string(TimeUnit unit) {
    switch (unit) {
        case TimeUnit::Seconds: return "seconds";
        case TimeUnit::Hours: return "hours";
        case TimeUnit::Days: return "days";
    }
    return "seconds";
}

inline std::string_view to_string(ReuseKind kind) {
    return kind == ReuseKind::Individual ? "individual" : "social";
}

// Seconds between each reuse and the most recent strictly earlier qualifying
// use: the user's own (individual) or any followee's (social).
inline std::vector<double> reuse_ages(const Corpus& corpus, ReuseKind kind) {
    std::unordered_map<std::string_view, std::unordered_map<std::string_view, Timestamp>> last_use;
    auto lookup = [&](std::string_view user, std::string_view tag) -> const Timestamp* {
        auto u = last_use.find(user);
        if (u == last_use.end()) return nullptr;
        auto t = u->second.find(tag);
        return t == u->second.end() ? nullptr : &t->second;
    };

    std::vector<double> ages;
    detail::for_each_assignment_grouped(
        corpus,
        [&](const Tweet& tweet, const std::string& tag) {
            const Timestamp* prior = nullptr;
            if (kind == ReuseKind::Individual) {
                prior = lookup(tweet.user_id, tag);
            } else {
                for (const auto& f : corpus.graph.followees(tweet.user_id))
                    if (const auto* t = lookup(f, tag); t && (!prior || *prior < *t)) prior = t;
            }
            if (prior) ages.push_back(static_cast<double>(tweet.time.seconds - prior->seconds));
        },
        [&](const Tweet& tweet, const std::string& tag) { last_use[tweet.user_id][tag] = tweet.time; });
    return ages;
}

struct AgeHistogram {
    TimeUnit unit = TimeUnit::Seconds;
    std::vector<double> edges;          // in `unit`, strictly increasing, edges[0] == 1
    std::vector<std::uint64_t> counts;  // counts.size() == edges.size() - 1
    std::uint64_t below_range = 0;      // ages shorter than one unit, not binned

    double midpoint(std::size_t bucket) const { return std::sqrt(edges[bucket] * edges[bucket + 1]); }
    double width(std::size_t bucket) const { return edges[bucket + 1] - edges[bucket]; }
    std::uint64_t total() const {
        std::uint64_t n = 0;
        for (auto c : counts) n += c;
        return n;
    }
};

// Log-spaced buckets [10^(i/p), 10^((i+1)/p)) starting at one unit and
// covering `span_seconds`. Ages are in seconds.
inline AgeHistogram log_histogram(std::span<const double> ages, double span_seconds, TimeUnit unit,
                                  int buckets_per_decade = 20) {
    if (buckets_per_decade < 1) throw UsageError("buckets_per_decade must be >= 1");
    const double scale = seconds_per(unit);
    if (span_seconds < scale)
        throw DataError("time unit '" + std::string(to_string(unit)) + "' is coarser than the data span of " +
                        std::to_string(static_cast<std::int64_t>(span_seconds)) + " seconds");
    const double span_units = span_seconds / scale;
    const auto per = static_cast<double>(buckets_per_decade);
    const auto n_buckets = static_cast<std::size_t>(std::floor(per * std::log10(span_units))) + 1;

    AgeHistogram hist;
    hist.unit = unit;
    hist.edges.reserve(n_buckets + 1);
    for (std::size_t i = 0; i <= n_buckets; ++i) hist.edges.push_back(std::pow(10.0, static_cast<double>(i) / per));
    hist.counts.assign(n_buckets, 0);

    for (double age_seconds : ages) {
        const double a = age_seconds / scale;
        if (a < 1.0) {
            ++hist.below_range;
            continue;
        }
        auto it = std::upper_bound(hist.edges.begin(), hist.edges.end(), a);
        auto bucket = static_cast<std::size_t>(it - hist.edges.begin()) - 1;
        ++hist.counts[std::min(bucket, n_buckets - 1)];
    }
    return hist;
}

inline AgeHistogram reuse_age_histogram(const Corpus& corpus, ReuseKind kind, TimeUnit unit,
                                        int buckets_per_decade = 20) {
    double span = 0.0;
    if (!corpus.tweets.empty())
        span = static_cast<double>(corpus.tweets.back().time.seconds - corpus.tweets.front().time.seconds);
    auto ages = reuse_ages(corpus, kind);
    return log_histogram(ages, span, unit, buckets_per_decade);
}

struct PowerLawFit {
    double slope = 0.0;
    double intercept = 0.0;  // natural-log space
    double r_squared = 0.0;
    std::size_t points = 0;
};

// Ordinary least squares of ln(y) on ln(x). Points must be positive.
inline PowerLawFit fit_log_log(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) throw DataError("power-law fit needs at least 2 points");
    const auto n = static_cast<double>(points.size());
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : points) {
        if (!(x > 0 && y > 0)) throw DataError("power-law fit needs positive coordinates");
        mx += std::log(x);
        my += std::log(y);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : points) {
        const double dx = std::log(x) - mx, dy = std::log(y) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) throw DataError("power-law fit needs at least 2 distinct abscissae");

    PowerLawFit fit;
    fit.points = points.size();
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (const auto& [x, y] : points) {
        const double r = std::log(y) - (fit.intercept + fit.slope * std::log(x));
        ss_res += r * r;
    }
    // Constant log-values: the flat line is an exact fit.
    const double tiny = 1e-24 * n * (1.0 + my * my);
    if (syy <= tiny)
        fit.r_squared = 1.0;
    else
        fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    return fit;
}

// Fits reuse density (count per unit age) against the geometric bucket
// midpoint over non-empty buckets. Dividing by the bucket width matters:
// log-spaced buckets grow with age, so raw counts of an age^-a law fall off
// only as age^(1-a).
inline PowerLawFit fit_power_law(const AgeHistogram& hist) {
    std::vector<std::pair<double, double>> points;
    for (std::size_t i = 0; i < hist.counts.size(); ++i)
        if (hist.counts[i] > 0)
            points.emplace_back(hist.midpoint(i), static_cast<double>(hist.counts[i]) / hist.width(i));
    if (points.size() < 2) throw DataError("power-law fit needs at least 2 non-empty buckets");
    return fit_log_log(points);
}

} // namespace hashrec
