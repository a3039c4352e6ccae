#pragma once

#include <algorithm>
#include <vector>

#include "hashrec/corpus.hpp"
#include "hashrec/reuse_analysis.hpp"

namespace hashrec::testing {

// Quadratic reference: scans every earlier assignment for each assignment.
inline std::vector<ReuseCategory> brute_force_categories(const Corpus& corpus) {
    std::vector<ReuseCategory> out;
    for (const auto& tweet : corpus.tweets) {
        for (const auto& tag : tweet.hashtags) {
            bool own = false, followee = false, anyone = false;
            for (const auto& prior : corpus.tweets) {
                if (!(prior.time < tweet.time)) continue;
                if (std::find(prior.hashtags.begin(), prior.hashtags.end(), tag) == prior.hashtags.end()) continue;
                anyone = true;
                if (prior.user_id == tweet.user_id) own = true;
                if (corpus.graph.follows(tweet.user_id, prior.user_id)) followee = true;
            }
            ReuseCategory c = ReuseCategory::External;
            if (own && followee) c = ReuseCategory::IndividualSocial;
            else if (own) c = ReuseCategory::Individual;
            else if (followee) c = ReuseCategory::Social;
            else if (anyone) c = ReuseCategory::Network;
            out.push_back(c);
        }
    }
    return out;
}

} // namespace hashrec::testing
