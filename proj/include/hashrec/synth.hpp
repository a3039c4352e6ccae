#pragma once

// Seeded synthetic tweet streams with controlled reuse behaviour.
//
// Each tweet carries one hashtag, picked by one of three branches:
//   individual (p_individual): one of the author's own past hashtags,
//       chosen with probability proportional to age^-alpha, where age is the
//       time since the author last used it;
//   social (p_social): one of the followees' past hashtags, same weighting
//       over the most recent followee use;
//   fresh (remainder): a Zipf(zipf_s) draw from a vocabulary of vocab_size.
// An individual/social pick with no history falls back to a fresh draw and is
// counted in GenStats. The text of each tweet is the hashtag's topical word.
//
// Randomness: std::mt19937_64 seeded with `seed`, consumed in a fixed order,
// so one binary always reproduces the same corpus for the same config.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "hashrec/corpus.hpp"
#include "hashrec/error.hpp"

namespace hashrec::synth {

inline constexpr const char* kRngAlgorithm = "mt19937_64";

struct GenConfig {
    std::size_t n_users = 500;
    std::size_t n_tweets = 100000;
    double follow_prob = 0.01;
    double p_individual = 0.45;
    double p_social = 0.22;
    double alpha = 1.0;
    double zipf_s = 0.6;
    std::size_t vocab_size = 1000000;
    std::uint64_t seed = 42;
    std::int64_t start_time = 1500000000;
    double mean_gap = 360.0;  // seconds between consecutive tweets (all users)

    void validate() const {
        std::vector<std::string> bad;
        auto prob = [](double p) { return std::isfinite(p) && p >= 0 && p <= 1; };
        if (n_users < 1) bad.emplace_back("n_users must be >= 1");
        if (p_social > 0 && n_users < 2) bad.emplace_back("n_users must be >= 2 when p_social > 0");
        if (!prob(follow_prob)) bad.emplace_back("follow_prob must be in [0,1]");
        if (!prob(p_individual)) bad.emplace_back("p_individual must be in [0,1]");
        if (!prob(p_social)) bad.emplace_back("p_social must be in [0,1]");
        if (prob(p_individual) && prob(p_social) && p_individual + p_social > 1.0)
            bad.emplace_back("p_individual + p_social must be <= 1");
        if (!(std::isfinite(alpha) && alpha > 0)) bad.emplace_back("alpha must be > 0");
        if (!(std::isfinite(zipf_s) && zipf_s >= 0)) bad.emplace_back("zipf_s must be >= 0");
        if (vocab_size < 1) bad.emplace_back("vocab_size must be >= 1");
        if (start_time < 0) bad.emplace_back("start_time must be >= 0");
        if (!(std::isfinite(mean_gap) && mean_gap > 0)) bad.emplace_back("mean_gap must be > 0");
        if (bad.empty()) return;
        std::string msg = "invalid generator config:";
        for (const auto& b : bad) msg += "\n  " + b;
        throw UsageError(msg);
    }
};

inline void to_json(nlohmann::ordered_json& j, const GenConfig& c) {
    j = {{"n_users", c.n_users},         {"n_tweets", c.n_tweets},   {"follow_prob", c.follow_prob},
         {"p_individual", c.p_individual}, {"p_social", c.p_social}, {"alpha", c.alpha},
         {"zipf_s", c.zipf_s},           {"vocab_size", c.vocab_size}, {"seed", c.seed},
         {"start_time", c.start_time},   {"mean_gap", c.mean_gap}};
}

// Missing keys keep their defaults; unknown keys are rejected.
inline GenConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw UsageError("generator config must be a JSON object");
    GenConfig c;
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "n_users") c.n_users = value.get<std::size_t>();
            else if (key == "n_tweets") c.n_tweets = value.get<std::size_t>();
            else if (key == "follow_prob") c.follow_prob = value.get<double>();
            else if (key == "p_individual") c.p_individual = value.get<double>();
            else if (key == "p_social") c.p_social = value.get<double>();
            else if (key == "alpha") c.alpha = value.get<double>();
            else if (key == "zipf_s") c.zipf_s = value.get<double>();
            else if (key == "vocab_size") c.vocab_size = value.get<std::size_t>();
            else if (key == "seed") c.seed = value.get<std::uint64_t>();
            else if (key == "start_time") c.start_time = value.get<std::int64_t>();
            else if (key == "mean_gap") c.mean_gap = value.get<double>();
            else throw UsageError("unknown generator config key '" + key + "'");
        } catch (const nlohmann::json::exception&) {
            throw UsageError("generator config key '" + key + "' has the wrong type");
        }
    }
    return c;
}

struct GenStats {
    std::size_t individual = 0;  // tweets whose hashtag came from the individual branch
    std::size_t social = 0;
    std::size_t fresh = 0;       // fresh draws chosen directly (excludes fallbacks)
    std::size_t fallback_individual = 0;
    std::size_t fallback_social = 0;
};

struct Generated {
    std::vector<Tweet> tweets;  // generation order == chronological order
    FollowGraph graph;
    GenStats stats;
};

namespace detail {

// Hashtags with the time of their latest use, for one user's own history or
// for the pooled history of their followees.
class RecencyPool {
public:
    void touch(std::uint32_t tag, std::int64_t time) {
        auto [it, inserted] = pos_.try_emplace(tag, static_cast<std::uint32_t>(tags_.size()));
        if (inserted) {
            tags_.push_back(tag);
            last_.push_back(time);
        } else {
            last_[it->second] = time;
        }
    }

    bool empty() const { return tags_.empty(); }

    // Draws a tag with probability proportional to max(now - last, 1)^-alpha.
    template <typename Rng>
    std::uint32_t sample(std::int64_t now, double alpha, Rng& rng, std::vector<double>& scratch) const {
        scratch.resize(tags_.size());
        double total = 0.0;
        for (std::size_t i = 0; i < tags_.size(); ++i) {
            auto age = static_cast<double>(std::max<std::int64_t>(now - last_[i], 1));
            scratch[i] = std::pow(age, -alpha);
            total += scratch[i];
        }
        double target = std::uniform_real_distribution<double>(0.0, total)(rng);
        for (std::size_t i = 0; i < tags_.size(); ++i) {
            target -= scratch[i];
            if (target < 0) return tags_[i];
        }
        return tags_.back();
    }

private:
    std::vector<std::uint32_t> tags_;
    std::vector<std::int64_t> last_;
    std::unordered_map<std::uint32_t, std::uint32_t> pos_;
};

inline std::string padded(char prefix, std::size_t value, std::size_t width) {
    auto digits = std::to_string(value);
    if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
    return prefix + digits;
}

} // namespace detail

inline std::string hashtag_name(std::size_t rank) { return "h" + std::to_string(rank); }
inline std::string topic_word(std::size_t rank) { return "w" + std::to_string(rank); }

inline Generated generate(const GenConfig& config) {
    config.validate();
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const auto user_width = std::to_string(config.n_users - 1).size();
    const auto tweet_width = std::to_string(config.n_tweets > 0 ? config.n_tweets - 1 : 0).size();
    std::vector<std::string> users;
    users.reserve(config.n_users);
    for (std::size_t u = 0; u < config.n_users; ++u) users.push_back(detail::padded('u', u, user_width));

    Generated out;
    std::vector<std::vector<std::uint32_t>> followers(config.n_users);
    for (std::size_t u = 0; u < config.n_users; ++u) {
        for (std::size_t v = 0; v < config.n_users; ++v) {
            if (u == v) continue;
            if (unit(rng) < config.follow_prob) {
                out.graph.add_edge(users[u], users[v]);
                followers[v].push_back(static_cast<std::uint32_t>(u));
            }
        }
    }

    std::vector<double> zipf_weights(config.vocab_size);
    for (std::size_t r = 0; r < config.vocab_size; ++r)
        zipf_weights[r] = std::pow(static_cast<double>(r + 1), -config.zipf_s);
    std::discrete_distribution<std::uint32_t> zipf(zipf_weights.begin(), zipf_weights.end());
    zipf_weights = {};
    std::exponential_distribution<double> gap(1.0 / config.mean_gap);
    std::uniform_int_distribution<std::size_t> pick_user(0, config.n_users - 1);

    std::vector<detail::RecencyPool> own(config.n_users), feed(config.n_users);
    std::vector<double> scratch;
    out.tweets.reserve(config.n_tweets);
    double clock = 0.0;
    for (std::size_t i = 0; i < config.n_tweets; ++i) {
        clock += gap(rng);
        const std::int64_t now = config.start_time + static_cast<std::int64_t>(std::floor(clock));
        const auto u = pick_user(rng);
        const double branch = unit(rng);

        std::uint32_t tag = 0;
        bool chosen = false;
        if (branch < config.p_individual) {
            if (!own[u].empty()) {
                tag = own[u].sample(now, config.alpha, rng, scratch);
                chosen = true;
                ++out.stats.individual;
            } else {
                ++out.stats.fallback_individual;
            }
        } else if (branch < config.p_individual + config.p_social) {
            if (!feed[u].empty()) {
                tag = feed[u].sample(now, config.alpha, rng, scratch);
                chosen = true;
                ++out.stats.social;
            } else {
                ++out.stats.fallback_social;
            }
        } else {
            ++out.stats.fresh;
        }
        if (!chosen) tag = zipf(rng) + 1;

        own[u].touch(tag, now);
        for (auto f : followers[u]) feed[f].touch(tag, now);

        Tweet tweet;
        tweet.tweet_id = detail::padded('t', i, tweet_width);
        tweet.user_id = users[u];
        tweet.time = Timestamp{now};
        tweet.hashtags = {hashtag_name(tag)};
        tweet.tokens = std::vector<std::string>{topic_word(tag)};
        out.tweets.push_back(std::move(tweet));
    }
    return out;
}

inline nlohmann::ordered_json stats_json(const GenStats& s) {
    return {{"individual", s.individual},
            {"social", s.social},
            {"fresh", s.fresh},
            {"fallback_individual", s.fallback_individual},
            {"fallback_social", s.fallback_social}};
}

} // namespace hashrec::synth
