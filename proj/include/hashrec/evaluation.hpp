#pragma once

// Offline top-k evaluation. Every test tweet is one query: the author and the
// tweet's timestamp go in, its hashtags are the relevant set. Scenario 1 hides
// the tweet's text; scenario 2 lets content-aware algorithms read it.

#include <atomic>
#include <exception>
#include <mutex>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "hashrec/baselines.hpp"
#include "hashrec/bll.hpp"
#include "hashrec/content_model.hpp"
#include "hashrec/corpus.hpp"
#include "hashrec/error.hpp"
#include "hashrec/io.hpp"
#include "hashrec/metrics.hpp"
#include "hashrec/usage_index.hpp"

namespace hashrec {

enum class Algorithm { BllIs, BllIsc, MpGlobal, MpUser, MpSocial, MostRecent };

inline std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::BllIs: return "bll_is";
        case Algorithm::BllIsc: return "bll_isc";
        case Algorithm::MpGlobal: return "mp";
        case Algorithm::MpUser: return "mp_u";
        case Algorithm::MpSocial: return "mp_s";
        case Algorithm::MostRecent: return "mr";
    }
    return "unknown";
}

inline Algorithm parse_algorithm(std::string_view name) {
    for (auto a : {Algorithm::BllIs, Algorithm::BllIsc, Algorithm::MpGlobal, Algorithm::MpUser,
                   Algorithm::MpSocial, Algorithm::MostRecent})
        if (to_string(a) == name) return a;
    throw UsageError("unknown algorithm '" + std::string(name) + "' (expected bll_is, bll_isc, mp, mp_u, mp_s, mr)");
}

// Comma-separated list, e.g. "bll_is,mp,mr". Duplicates are rejected.
inline std::vector<Algorithm> parse_algorithm_list(std::string_view list) {
    std::vector<Algorithm> out;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        auto comma = list.find(',', pos);
        auto name = list.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        auto alg = parse_algorithm(name);
        if (std::find(out.begin(), out.end(), alg) != out.end())
            throw UsageError("algorithm '" + std::string(name) + "' listed twice");
        out.push_back(alg);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

struct EvalConfig {
    int scenario = 1;
    std::vector<Algorithm> algorithms{Algorithm::BllIs, Algorithm::BllIsc, Algorithm::MpGlobal,
                                      Algorithm::MpUser, Algorithm::MpSocial, Algorithm::MostRecent};
    ActivationParams params;
    double lambda = 0.5;
    std::size_t k_max = 10;
    unsigned threads = 1;
};

struct QueryMetrics {
    std::string tweet_id;
    std::vector<double> precision;  // index k-1
    std::vector<double> recall;
    double f1_at_5 = 0.0;
    double reciprocal_rank = 0.0;
    double average_precision = 0.0;
    double ndcg = 0.0;
};

struct EvalReport {
    Algorithm algorithm = Algorithm::BllIs;
    std::size_t k_max = 0;
    std::size_t n_test_queries = 0;
    std::vector<double> precision;  // mean precision@k, index k-1
    std::vector<double> recall;
    double f1_at_5 = 0.0;
    double mrr = 0.0;
    double map = 0.0;
    double ndcg = 0.0;  // nDCG@k_max
    std::vector<QueryMetrics> queries;
};

inline QueryMetrics score_query(const ScoredList& rec, const RelevantSet& relevant, std::size_t k_max) {
    QueryMetrics q;
    q.precision.reserve(k_max);
    q.recall.reserve(k_max);
    for (std::size_t k = 1; k <= k_max; ++k) {
        q.precision.push_back(precision_at_k(rec, relevant, k));
        q.recall.push_back(recall_at_k(rec, relevant, k));
    }
    q.f1_at_5 = f1_at_k(rec, relevant, 5);
    q.reciprocal_rank = reciprocal_rank(rec, relevant);
    q.average_precision = average_precision(rec, relevant, k_max);
    q.ndcg = ndcg_at_k(rec, relevant, k_max);
    return q;
}

// Macro average, summed in query order.
inline EvalReport aggregate(Algorithm algorithm, std::vector<QueryMetrics> queries, std::size_t k_max) {
    EvalReport r;
    r.algorithm = algorithm;
    r.k_max = k_max;
    r.n_test_queries = queries.size();
    r.precision.assign(k_max, 0.0);
    r.recall.assign(k_max, 0.0);
    for (const auto& q : queries) {
        for (std::size_t i = 0; i < k_max; ++i) {
            r.precision[i] += q.precision[i];
            r.recall[i] += q.recall[i];
        }
        r.f1_at_5 += q.f1_at_5;
        r.mrr += q.reciprocal_rank;
        r.map += q.average_precision;
        r.ndcg += q.ndcg;
    }
    if (!queries.empty()) {
        const auto n = static_cast<double>(queries.size());
        for (auto& v : r.precision) v /= n;
        for (auto& v : r.recall) v /= n;
        r.f1_at_5 /= n;
        r.mrr /= n;
        r.map /= n;
        r.ndcg /= n;
    }
    r.queries = std::move(queries);
    return r;
}

// Everything an algorithm may look at: structures derived from train only.
struct EvalContext {
    const Corpus& train;
    UsageIndex index;
    TokenHashtagProfile profile;
};

inline ScoredList recommend(Algorithm algorithm, const EvalContext& ctx, const Tweet& query,
                            std::span<const std::string> tokens, const EvalConfig& config) {
    const auto& user = query.user_id;
    const auto now = query.time;
    const auto k = config.k_max;
    switch (algorithm) {
        case Algorithm::BllIs: return recommend_bll_is(ctx.index, ctx.train.graph, user, now, config.params, k);
        case Algorithm::BllIsc:
            return recommend_bll_isc(ctx.index, ctx.train.graph, ctx.profile, user, now, tokens, config.params,
                                     config.lambda, k);
        case Algorithm::MpGlobal: return mp_global(ctx.index, now, k);
        case Algorithm::MpUser: return mp_user(ctx.index, user, now, k);
        case Algorithm::MpSocial: return mp_social(ctx.index, ctx.train.graph, user, now, k);
        case Algorithm::MostRecent: return most_recent(ctx.index, user, now, k);
    }
    return {};
}

// Runs every configured algorithm over every test tweet. Indexes and profiles
// come from `train` alone. Results do not depend on the order of `test` or on
// config.threads.
inline std::vector<EvalReport> run_eval(const Corpus& train, std::span<const Tweet> test, const EvalConfig& config) {
    if (config.scenario != 1 && config.scenario != 2) throw UsageError("scenario must be 1 or 2");
    if (config.k_max < 1) throw UsageError("k_max must be >= 1");
    if (config.algorithms.empty()) throw UsageError("no algorithms selected");
    if (!(config.lambda >= 0 && config.lambda <= 1)) throw UsageError("lambda must be in [0,1]");
    config.params.validate();
    if (test.empty()) throw DataError("no test queries");

    std::vector<Tweet> queries(test.begin(), test.end());
    std::sort(queries.begin(), queries.end(), chronological_less);
    std::unordered_set<std::string_view> train_ids;
    for (const auto& t : train.tweets) train_ids.insert(t.tweet_id);
    bool any_text = false;
    for (const auto& t : train.tweets) any_text = any_text || (t.tokens && !t.tokens->empty());
    for (const auto& q : queries) {
        if (q.hashtags.empty()) throw DataError("test tweet " + q.tweet_id + " has no hashtags");
        if (train_ids.contains(q.tweet_id)) throw DataError("test tweet " + q.tweet_id + " also appears in train");
        any_text = any_text || (q.tokens && !q.tokens->empty());
    }
    if (config.scenario == 2 && !any_text) throw DataError("scenario 2 requires tweet text, but none is available");

    EvalContext ctx{train, build_usage_index(train), {}};
    if (config.scenario == 2) ctx.profile = build_profiles(train);

    const auto n_alg = config.algorithms.size();
    std::vector<std::vector<QueryMetrics>> results(n_alg, std::vector<QueryMetrics>(queries.size()));
    const std::vector<std::string> no_tokens;

    auto run_query = [&](std::size_t qi) {
        const auto& q = queries[qi];
        RelevantSet relevant(q.hashtags);
        std::span<const std::string> tokens = no_tokens;
        if (config.scenario == 2 && q.tokens) tokens = *q.tokens;
        for (std::size_t a = 0; a < n_alg; ++a) {
            auto rec = recommend(config.algorithms[a], ctx, q, tokens, config);
            auto m = score_query(rec, relevant, config.k_max);
            m.tweet_id = q.tweet_id;
            results[a][qi] = std::move(m);
        }
    };

    const unsigned n_threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(queries.size())));
    if (n_threads == 1) {
        for (std::size_t qi = 0; qi < queries.size(); ++qi) run_query(qi);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        {
            std::vector<std::jthread> workers;
            for (unsigned t = 0; t < n_threads; ++t) {
                workers.emplace_back([&] {
                    for (std::size_t qi; (qi = next.fetch_add(1)) < queries.size();) {
                        try {
                            run_query(qi);
                        } catch (...) {
                            std::lock_guard lock(failure_mutex);
                            if (!failure) failure = std::current_exception();
                        }
                    }
                });
            }
        }
        if (failure) std::rethrow_exception(failure);
    }

    std::vector<EvalReport> reports;
    for (std::size_t a = 0; a < n_alg; ++a)
        reports.push_back(aggregate(config.algorithms[a], std::move(results[a]), config.k_max));
    return reports;
}

struct PrPoint {
    std::size_t k = 0;
    double precision = 0.0;
    double recall = 0.0;
};

inline std::vector<PrPoint> pr_curve(const EvalReport& report) {
    std::vector<PrPoint> rows;
    for (std::size_t k = 1; k <= report.k_max; ++k)
        rows.push_back(PrPoint{k, report.precision[k - 1], report.recall[k - 1]});
    return rows;
}

inline std::string pr_curve_csv(std::span<const EvalReport> reports) {
    std::ostringstream out;
    out << "algorithm,k,precision,recall\n";
    for (const auto& r : reports)
        for (const auto& p : pr_curve(r))
            out << to_string(r.algorithm) << ',' << p.k << ',' << io::format_double(p.precision) << ','
                << io::format_double(p.recall) << '\n';
    return out.str();
}

inline std::string metrics_json(std::span<const EvalReport> reports, const EvalConfig& config) {
    nlohmann::ordered_json doc;
    doc["scenario"] = config.scenario;
    doc["k_max"] = config.k_max;
    doc["params"] = {{"d_individual", config.params.d_individual},
                     {"d_social", config.params.d_social},
                     {"beta", config.params.beta},
                     {"min_age", config.params.min_age},
                     {"lambda", config.lambda}};
    auto& algs = doc["algorithms"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json a;
        a["algorithm"] = to_string(r.algorithm);
        a["n_test_queries"] = r.n_test_queries;
        a["precision"] = r.precision;
        a["recall"] = r.recall;
        a["f1_at_5"] = r.f1_at_5;
        a["mrr"] = r.mrr;
        a["map"] = r.map;
        a["ndcg"] = r.ndcg;
        algs.push_back(std::move(a));
    }
    return doc.dump(2) + "\n";
}

} // namespace hashrec
