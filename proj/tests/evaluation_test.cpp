#include <random>

#include <gtest/gtest.h>

#include "hashrec/evaluation.hpp"
#include "test_support.hpp"

using namespace hashrec;
using hashrec::testing::make_tweet;

namespace {

EvalConfig config_for(std::vector<Algorithm> algorithms, std::size_t k_max = 10) {
    EvalConfig c;
    c.algorithms = std::move(algorithms);
    c.k_max = k_max;
    return c;
}

} // namespace

TEST(RunEval, PerfectRecommenderScoresOne) {
    auto train = build_corpus({make_tweet("p", "u", 1, {"a", "b", "c", "d", "e"})}, {});
    std::vector<Tweet> test{make_tweet("q", "u", 10, {"a", "b", "c", "d", "e"})};
    auto reports = run_eval(train, test, config_for({Algorithm::MpUser}, 5));
    ASSERT_EQ(reports.size(), 1u);
    const auto& r = reports[0];
    EXPECT_EQ(r.n_test_queries, 1u);
    for (double p : r.precision) EXPECT_DOUBLE_EQ(p, 1.0);
    EXPECT_DOUBLE_EQ(r.recall.back(), 1.0);
    EXPECT_DOUBLE_EQ(r.f1_at_5, 1.0);
    EXPECT_DOUBLE_EQ(r.mrr, 1.0);
    EXPECT_DOUBLE_EQ(r.map, 1.0);
    EXPECT_DOUBLE_EQ(r.ndcg, 1.0);
}

// u1 history a,b,a -> mp_u [a, b]; u2 history c -> [c].
// Queries: u1 wants {a}, u2 wants {c, d}.
//   P@1 = (1 + 1)/2 = 1,     P@2 = (1/2 + 1/2)/2 = 1/2
//   R@1 = (1 + 1/2)/2 = 3/4, R@2 = (1 + 1/2)/2 = 3/4
TEST(RunEval, TwoQueryHandFixture) {
    auto train = build_corpus({make_tweet("1", "u1", 1, {"a"}), make_tweet("2", "u1", 2, {"b"}),
                               make_tweet("3", "u1", 3, {"a"}), make_tweet("4", "u2", 1, {"c"})},
                              {});
    std::vector<Tweet> test{make_tweet("5", "u1", 10, {"a"}), make_tweet("6", "u2", 10, {"c", "d"})};
    auto r = run_eval(train, test, config_for({Algorithm::MpUser}, 2))[0];
    EXPECT_EQ(r.precision, (std::vector<double>{1.0, 0.5}));
    EXPECT_EQ(r.recall, (std::vector<double>{0.75, 0.75}));
    EXPECT_DOUBLE_EQ(r.mrr, 1.0);
}

TEST(RunEval, Errors) {
    auto train = build_corpus({make_tweet("1", "u", 1, {"a"})}, {});
    const std::vector<Tweet> none;
    EXPECT_THROW(run_eval(train, none, config_for({Algorithm::MpGlobal})), DataError);
    try {
        run_eval(train, none, config_for({Algorithm::MpGlobal}));
    } catch (const DataError& e) {
        EXPECT_STREQ(e.what(), "no test queries");
    }

    std::vector<Tweet> test{make_tweet("2", "u", 5, {"a"})};
    auto scenario2 = config_for({Algorithm::BllIsc});
    scenario2.scenario = 2;
    EXPECT_THROW(run_eval(train, test, scenario2), DataError);

    std::vector<Tweet> leaked{make_tweet("1", "u", 5, {"a"})};
    EXPECT_THROW(run_eval(train, leaked, config_for({Algorithm::MpGlobal})), DataError);

    std::vector<Tweet> tagless{make_tweet("3", "u", 5, {})};
    EXPECT_THROW(run_eval(train, tagless, config_for({Algorithm::MpGlobal})), DataError);

    auto bad = config_for({Algorithm::MpGlobal});
    bad.scenario = 3;
    EXPECT_THROW(run_eval(train, test, bad), UsageError);
    bad = config_for({Algorithm::MpGlobal}, 0);
    EXPECT_THROW(run_eval(train, test, bad), UsageError);
}

TEST(RunEval, DeterministicAcrossThreadsAndTestOrder) {
    std::mt19937_64 rng(71);
    hashrec::testing::RandomCorpusSpec spec;
    spec.n_tweets = 400;
    spec.n_users = 12;
    spec.max_time = 500;
    spec.with_text = true;
    auto corpus = hashrec::testing::random_corpus(rng, spec);
    auto split = chronological_split(corpus, 2);
    ASSERT_GT(split.test.size(), 5u);

    auto config = config_for({Algorithm::BllIs, Algorithm::BllIsc, Algorithm::MpGlobal, Algorithm::MpUser,
                              Algorithm::MpSocial, Algorithm::MostRecent});
    config.scenario = 2;
    auto base = run_eval(split.train, split.test, config);
    const auto base_json = metrics_json(base, config);
    const auto base_csv = pr_curve_csv(base);

    auto shuffled = split.test;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    config.threads = 4;
    auto parallel = run_eval(split.train, shuffled, config);
    EXPECT_EQ(metrics_json(parallel, config), base_json);
    EXPECT_EQ(pr_curve_csv(parallel), base_csv);
}

TEST(RunEval, ReportInvariantsOnRandomCorpora) {
    std::mt19937_64 rng(72);
    for (int trial = 0; trial < 10; ++trial) {
        hashrec::testing::RandomCorpusSpec spec;
        spec.n_tweets = 150;
        spec.max_time = 300;
        auto corpus = hashrec::testing::random_corpus(rng, spec);
        auto split = chronological_split(corpus, 1);
        if (split.test.empty()) continue;
        for (const auto& r : run_eval(split.train, split.test, config_for({Algorithm::BllIs, Algorithm::MpUser}))) {
            for (std::size_t k = 0; k < r.k_max; ++k) {
                EXPECT_GE(r.precision[k], 0.0);
                EXPECT_LE(r.recall[k], 1.0);
                if (k > 0) {
                    EXPECT_GE(r.recall[k], r.recall[k - 1]);
                }
            }
            for (const auto& q : r.queries)
                for (std::size_t k = 1; k < r.k_max; ++k) EXPECT_GE(q.recall[k], q.recall[k - 1]);
        }
    }
}

TEST(PrCurve, RowsMatchReportMeans) {
    auto train = build_corpus({make_tweet("1", "u", 1, {"a"}), make_tweet("2", "u", 2, {"b"})}, {});
    std::vector<Tweet> test{make_tweet("3", "u", 5, {"a", "b"})};
    auto reports = run_eval(train, test, config_for({Algorithm::MostRecent}));
    auto rows = pr_curve(reports[0]);
    ASSERT_EQ(rows.size(), 10u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].k, i + 1);
        EXPECT_EQ(rows[i].precision, reports[0].precision[i]);
        EXPECT_EQ(rows[i].recall, reports[0].recall[i]);
    }
    EXPECT_DOUBLE_EQ(rows[1].recall, 1.0);  // perfect from k = |relevant| on

    auto csv = pr_curve_csv(reports);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "algorithm,k,precision,recall");
    EXPECT_NE(csv.find("mr,2,1,1\n"), std::string::npos);
}

TEST(AlgorithmList, Parsing) {
    EXPECT_EQ(parse_algorithm_list("bll_is,mp"), (std::vector<Algorithm>{Algorithm::BllIs, Algorithm::MpGlobal}));
    EXPECT_EQ(parse_algorithm_list("mr"), std::vector<Algorithm>{Algorithm::MostRecent});
    EXPECT_THROW(parse_algorithm_list("foo"), UsageError);
    EXPECT_THROW(parse_algorithm_list("mp,mp"), UsageError);
    EXPECT_THROW(parse_algorithm_list(""), UsageError);
}
