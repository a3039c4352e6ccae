#pragma once

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hashrec/corpus.hpp"

namespace hashrec::testing {

inline Tweet make_tweet(std::string id, std::string user, std::int64_t time, std::vector<std::string> tags,
                        std::optional<std::vector<std::string>> tokens = std::nullopt) {
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
    return Tweet{std::move(id), std::move(user), Timestamp{time}, std::move(tags), std::move(tokens)};
}

struct RandomCorpusSpec {
    std::size_t n_tweets = 50;
    std::size_t n_users = 5;
    std::size_t n_tags = 8;
    std::int64_t max_time = 40;   // small so equal timestamps are common
    double follow_prob = 0.3;
    std::size_t max_tags_per_tweet = 3;
    bool with_text = false;
};

inline Corpus random_corpus(std::mt19937_64& rng, const RandomCorpusSpec& spec) {
    std::uniform_int_distribution<std::size_t> user(0, spec.n_users - 1);
    std::uniform_int_distribution<std::size_t> tag(0, spec.n_tags - 1);
    std::uniform_int_distribution<std::size_t> n_tags(0, spec.max_tags_per_tweet);
    std::uniform_int_distribution<std::int64_t> time(0, spec.max_time);
    std::bernoulli_distribution follow(spec.follow_prob);

    FollowGraph graph;
    for (std::size_t a = 0; a < spec.n_users; ++a)
        for (std::size_t b = 0; b < spec.n_users; ++b)
            if (a != b && follow(rng)) graph.add_edge("u" + std::to_string(a), "u" + std::to_string(b));

    std::vector<Tweet> tweets;
    for (std::size_t i = 0; i < spec.n_tweets; ++i) {
        std::vector<std::string> tags;
        auto k = n_tags(rng);
        for (std::size_t j = 0; j < k; ++j) tags.push_back("tag" + std::to_string(tag(rng)));
        std::optional<std::vector<std::string>> tokens;
        if (spec.with_text) {
            std::vector<std::string> words;
            for (std::size_t j = 0; j < 1 + k; ++j) words.push_back("word" + std::to_string(tag(rng)));
            tokens = std::move(words);
        }
        tweets.push_back(make_tweet("t" + std::to_string(i), "u" + std::to_string(user(rng)), time(rng),
                                    std::move(tags), std::move(tokens)));
    }
    return build_corpus(std::move(tweets), std::move(graph));
}

inline std::filesystem::path fresh_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("hashrec_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

struct CommandResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr combined
};

inline CommandResult run_command(const std::string& command) {
    CommandResult result;
    std::FILE* pipe = ::popen((command + " 2>&1").c_str(), "r");
    if (!pipe) return result;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) result.output.append(buf, n);
    int status = ::pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

} // namespace hashrec::testing
