#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hashrec/corpus.hpp"

namespace hashrec {

struct GlobalUse {
    Timestamp time;
    std::string user_id;

    bool operator==(const GlobalUse&) const = default;
};

// One user's history for one hashtag.
struct TagUses {
    std::string hashtag;
    std::vector<Timestamp> times;  // ascending
};

struct UserHistory {
    std::string user_id;
    std::vector<TagUses> tags;  // sorted by hashtag
};

struct GlobalTagUses {
    std::string hashtag;
    std::vector<GlobalUse> uses;  // ascending by (time, user_id)
};

// Number of entries strictly before `now` in an ascending time list.
inline std::size_t count_before(std::span<const Timestamp> times, Timestamp now) {
    return static_cast<std::size_t>(std::lower_bound(times.begin(), times.end(), now) - times.begin());
}

inline std::size_t count_before(std::span<const GlobalUse> uses, Timestamp now) {
    auto it = std::lower_bound(uses.begin(), uses.end(), now,
                               [](const GlobalUse& u, Timestamp t) { return u.time < t; });
    return static_cast<std::size_t>(it - uses.begin());
}

// Per (user, hashtag) and per hashtag usage timelines. Immutable once built;
// lookups are binary searches over flat sorted vectors.
class UsageIndex {
public:
    UsageIndex() = default;

    static UsageIndex build(std::span<const Tweet> tweets) {
        std::unordered_map<std::string, std::unordered_map<std::string, std::vector<Timestamp>>> per_user;
        std::unordered_map<std::string, std::vector<GlobalUse>> global;
        UsageIndex index;
        for (const auto& t : tweets) {
            if (t.hashtags.empty()) continue;
            auto& user_tags = per_user[t.user_id];
            for (const auto& tag : t.hashtags) {
                user_tags[tag].push_back(t.time);
                global[tag].push_back(GlobalUse{t.time, t.user_id});
                ++index.event_count_;
            }
        }

        index.users_.reserve(per_user.size());
        for (auto& [user, tags] : per_user) {
            UserHistory history{user, {}};
            history.tags.reserve(tags.size());
            for (auto& [tag, times] : tags) {
                std::sort(times.begin(), times.end());
                history.tags.push_back(TagUses{tag, std::move(times)});
            }
            std::sort(history.tags.begin(), history.tags.end(),
                      [](const TagUses& a, const TagUses& b) { return a.hashtag < b.hashtag; });
            index.users_.push_back(std::move(history));
        }
        std::sort(index.users_.begin(), index.users_.end(),
                  [](const UserHistory& a, const UserHistory& b) { return a.user_id < b.user_id; });

        index.tags_.reserve(global.size());
        for (auto& [tag, uses] : global) {
            std::sort(uses.begin(), uses.end(), [](const GlobalUse& a, const GlobalUse& b) {
                return a.time != b.time ? a.time < b.time : a.user_id < b.user_id;
            });
            index.tags_.push_back(GlobalTagUses{tag, std::move(uses)});
        }
        std::sort(index.tags_.begin(), index.tags_.end(),
                  [](const GlobalTagUses& a, const GlobalTagUses& b) { return a.hashtag < b.hashtag; });
        return index;
    }

    // nullptr for a user without hashtag history.
    const UserHistory* user_history(std::string_view user) const {
        auto it = std::lower_bound(users_.begin(), users_.end(), user,
                                   [](const UserHistory& h, std::string_view u) { return h.user_id < u; });
        return (it != users_.end() && it->user_id == user) ? &*it : nullptr;
    }

    std::span<const Timestamp> uses(std::string_view user, std::string_view hashtag) const {
        const auto* history = user_history(user);
        if (!history) return {};
        auto it = std::lower_bound(history->tags.begin(), history->tags.end(), hashtag,
                                   [](const TagUses& u, std::string_view h) { return u.hashtag < h; });
        if (it == history->tags.end() || it->hashtag != hashtag) return {};
        return it->times;
    }

    std::span<const GlobalUse> global_uses(std::string_view hashtag) const {
        auto it = std::lower_bound(tags_.begin(), tags_.end(), hashtag,
                                   [](const GlobalTagUses& g, std::string_view h) { return g.hashtag < h; });
        if (it == tags_.end() || it->hashtag != hashtag) return {};
        return it->uses;
    }

    std::span<const UserHistory> users() const { return users_; }
    std::span<const GlobalTagUses> hashtags() const { return tags_; }

    // Number of (tweet, hashtag) assignments indexed.
    std::size_t event_count() const { return event_count_; }

private:
    std::vector<UserHistory> users_;
    std::vector<GlobalTagUses> tags_;
    std::size_t event_count_ = 0;
};

inline UsageIndex build_usage_index(std::span<const Tweet> tweets) { return UsageIndex::build(tweets); }

inline UsageIndex build_usage_index(const Corpus& corpus) { return UsageIndex::build(corpus.tweets); }

} // namespace hashrec
