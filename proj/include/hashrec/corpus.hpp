#pragma once

// Tweet stream and follow graph: parsing, validation, canonical
// serialization and the chronological train/test split.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hashrec/error.hpp"

namespace hashrec {

// Seconds since the Unix epoch.
struct Timestamp {
    std::int64_t seconds = 0;

    friend constexpr auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

struct Tweet {
    std::string tweet_id;
    std::string user_id;
    Timestamp time;
    std::vector<std::string> hashtags;  // normalized, sorted, unique
    std::optional<std::vector<std::string>> tokens;

    bool operator==(const Tweet&) const = default;
};

// Canonical corpus order: (time, tweet_id).
inline bool chronological_less(const Tweet& a, const Tweet& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.tweet_id < b.tweet_id;
}

using UserSet = std::set<std::string, std::less<>>;

// Directed follower -> followee edges. No self-loops.
class FollowGraph {
public:
    // Returns false (and stores nothing) for a self-loop.
    bool add_edge(std::string_view follower, std::string_view followee) {
        if (follower == followee) return false;
        auto it = edges_.find(follower);
        if (it == edges_.end()) it = edges_.emplace(std::string(follower), UserSet{}).first;
        if (it->second.emplace(followee).second) ++edge_count_;
        return true;
    }

    const UserSet& followees(std::string_view user) const {
        static const UserSet empty;
        auto it = edges_.find(user);
        return it == edges_.end() ? empty : it->second;
    }

    bool follows(std::string_view follower, std::string_view followee) const {
        return followees(follower).contains(followee);
    }

    std::size_t edge_count() const { return edge_count_; }
    const std::map<std::string, UserSet, std::less<>>& adjacency() const { return edges_; }

    bool operator==(const FollowGraph&) const = default;

private:
    std::map<std::string, UserSet, std::less<>> edges_;
    std::size_t edge_count_ = 0;
};

struct Corpus {
    std::vector<Tweet> tweets;  // chronological_less order
    FollowGraph graph;
    UserSet users;

    bool operator==(const Corpus&) const = default;
};

inline bool is_ascii_alnum(unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

// Lowercases (ASCII only) and strips leading '#'. May return an empty string.
inline std::string normalize_hashtag(std::string_view raw) {
    while (!raw.empty() && raw.front() == '#') raw.remove_prefix(1);
    std::string out(raw);
    std::transform(out.begin(), out.end(), out.begin(), ascii_lower);
    return out;
}

// Lowercase, split on non-alphanumeric characters, drop tokens shorter than
// two bytes and the word following a '#'. Bytes >= 0x80 count as word
// characters so UTF-8 text passes through untouched.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    bool in_hashtag = false;
    auto flush = [&] {
        if (!in_hashtag && current.size() >= 2) tokens.push_back(current);
        current.clear();
    };
    for (char ch : text) {
        auto c = static_cast<unsigned char>(ch);
        if (is_ascii_alnum(c) || c >= 0x80) {
            current.push_back(ascii_lower(ch));
            continue;
        }
        flush();
        in_hashtag = (ch == '#');
    }
    flush();
    return tokens;
}

namespace detail {

inline std::string line_error(std::size_t line_no, std::string_view what) {
    return "line " + std::to_string(line_no) + ": " + std::string(what);
}

inline bool is_blank(std::string_view line) {
    return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

inline Tweet tweet_from_json(const nlohmann::json& obj, std::size_t line_no) {
    if (!obj.is_object()) throw DataError(line_error(line_no, "expected a JSON object"));
    auto string_field = [&](const char* key) {
        auto it = obj.find(key);
        if (it == obj.end() || !it->is_string())
            throw DataError(line_error(line_no, std::string("missing or non-string \"") + key + "\""));
        return it->get<std::string>();
    };

    Tweet tweet;
    tweet.tweet_id = string_field("tweet_id");
    tweet.user_id = string_field("user_id");
    if (tweet.tweet_id.empty() || tweet.user_id.empty())
        throw DataError(line_error(line_no, "empty tweet_id or user_id"));

    auto ts = obj.find("timestamp");
    if (ts == obj.end() || !ts->is_number_integer())
        throw DataError(line_error(line_no, "missing or non-integer \"timestamp\""));
    if (ts->is_number_unsigned()) {
        auto v = ts->get<std::uint64_t>();
        if (v > static_cast<std::uint64_t>(INT64_MAX))
            throw DataError(line_error(line_no, "timestamp out of range"));
        tweet.time.seconds = static_cast<std::int64_t>(v);
    } else {
        tweet.time.seconds = ts->get<std::int64_t>();
    }
    if (tweet.time.seconds < 0) throw DataError(line_error(line_no, "negative timestamp"));

    auto tags = obj.find("hashtags");
    if (tags == obj.end() || !tags->is_array())
        throw DataError(line_error(line_no, "missing or non-array \"hashtags\""));
    for (const auto& tag : *tags) {
        if (!tag.is_string()) throw DataError(line_error(line_no, "non-string hashtag"));
        auto norm = normalize_hashtag(tag.get_ref<const std::string&>());
        if (norm.empty()) throw DataError(line_error(line_no, "empty hashtag"));
        tweet.hashtags.push_back(std::move(norm));
    }
    std::sort(tweet.hashtags.begin(), tweet.hashtags.end());
    tweet.hashtags.erase(std::unique(tweet.hashtags.begin(), tweet.hashtags.end()),
                         tweet.hashtags.end());

    auto text = obj.find("text");
    if (text != obj.end() && !text->is_null()) {
        if (!text->is_string()) throw DataError(line_error(line_no, "non-string \"text\""));
        tweet.tokens = tokenize(text->get_ref<const std::string&>());
    }
    return tweet;
}

} // namespace detail

// One JSON object per line; blank lines are skipped. Output keeps input order.
inline std::vector<Tweet> parse_tweets(std::istream& in) {
    std::vector<Tweet> tweets;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::is_blank(line)) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw DataError(detail::line_error(line_no, std::string("malformed JSON: ") + e.what()));
        }
        Tweet tweet = detail::tweet_from_json(obj, line_no);
        if (!seen.insert(tweet.tweet_id).second)
            throw DataError(detail::line_error(line_no, "duplicate tweet_id \"" + tweet.tweet_id + "\""));
        tweets.push_back(std::move(tweet));
    }
    return tweets;
}

struct FollowParseResult {
    FollowGraph graph;
    std::size_t self_loops = 0;  // dropped edges
};

// "follower<TAB>followee" per line; '#' comment lines and blank lines ignored.
inline FollowParseResult parse_follows(std::istream& in) {
    FollowParseResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
            throw DataError(detail::line_error(line_no, "expected exactly 2 tab-separated fields"));
        std::string_view view(line);
        auto follower = view.substr(0, tab);
        auto followee = view.substr(tab + 1);
        if (follower.empty() || followee.empty())
            throw DataError(detail::line_error(line_no, "empty user id"));
        if (!result.graph.add_edge(follower, followee)) ++result.self_loops;
    }
    return result;
}

inline Corpus build_corpus(std::vector<Tweet> tweets, FollowGraph graph) {
    Corpus corpus;
    std::sort(tweets.begin(), tweets.end(), chronological_less);
    for (const auto& t : tweets) corpus.users.insert(t.user_id);
    for (const auto& [follower, followees] : graph.adjacency()) {
        corpus.users.insert(follower);
        corpus.users.insert(followees.begin(), followees.end());
    }
    corpus.tweets = std::move(tweets);
    corpus.graph = std::move(graph);
    return corpus;
}

struct Split {
    Corpus train;
    std::vector<Tweet> test;  // chronological_less order
};

// Holds out each eligible user's latest `per_user_holdout` hashtag-bearing
// tweets. Users need at least per_user_holdout + 1 such tweets to be eligible.
inline Split chronological_split(const Corpus& corpus, int per_user_holdout = 1) {
    if (per_user_holdout < 1) throw UsageError("per_user_holdout must be >= 1");
    const auto holdout = static_cast<std::size_t>(per_user_holdout);

    std::unordered_map<std::string_view, std::vector<std::size_t>> by_user;
    for (std::size_t i = 0; i < corpus.tweets.size(); ++i) {
        const auto& t = corpus.tweets[i];
        if (!t.hashtags.empty()) by_user[t.user_id].push_back(i);
    }
    std::vector<bool> is_test(corpus.tweets.size(), false);
    for (const auto& [user, idx] : by_user) {
        if (idx.size() < holdout + 1) continue;
        for (std::size_t j = idx.size() - holdout; j < idx.size(); ++j) is_test[idx[j]] = true;
    }

    Split split;
    std::vector<Tweet> train;
    for (std::size_t i = 0; i < corpus.tweets.size(); ++i) {
        if (is_test[i])
            split.test.push_back(corpus.tweets[i]);
        else
            train.push_back(corpus.tweets[i]);
    }
    split.train = build_corpus(std::move(train), corpus.graph);
    return split;
}

// Canonical JSONL: tokens re-joined with single spaces as "text".
inline void write_tweets(std::ostream& out, std::span<const Tweet> tweets) {
    for (const auto& t : tweets) {
        nlohmann::ordered_json obj;
        obj["tweet_id"] = t.tweet_id;
        obj["user_id"] = t.user_id;
        obj["timestamp"] = t.time.seconds;
        obj["hashtags"] = t.hashtags;
        if (t.tokens) {
            std::string text;
            for (const auto& tok : *t.tokens) {
                if (!text.empty()) text.push_back(' ');
                text += tok;
            }
            obj["text"] = std::move(text);
        }
        out << obj.dump() << '\n';
    }
}

inline void write_follows(std::ostream& out, const FollowGraph& graph) {
    for (const auto& [follower, followees] : graph.adjacency())
        for (const auto& followee : followees) out << follower << '\t' << followee << '\n';
}

} // namespace hashrec
