#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hashrec/evaluation.hpp"

namespace hashrec::testing {

struct FixtureQuery {
    std::vector<std::string> recommended;
    std::vector<std::string> relevant;
};

inline ScoredList as_scored(const std::vector<std::string>& tags) {
    ScoredList out;
    double score = static_cast<double>(tags.size());
    for (const auto& t : tags) out.push_back(ScoredTag{t, score--});
    return out;
}

// Five queries at k_max = 3.
inline std::vector<FixtureQuery> five_query_fixture() {
    return {
        {{"a", "b", "c"}, {"a"}},
        {{"x", "a"}, {"a"}},
        {{}, {"a", "b"}},
        {{"a", "x", "b"}, {"a", "b"}},
        {{"x", "y", "z"}, {"a"}},
    };
}

struct FixtureExpectation {
    std::vector<double> precision, recall;
    double f1_at_5, mrr, map, ndcg;
};

// Hand-derived means. Per query (P@1..3 | R@1..3 | RR | AP@3 | nDCG@3 | F1@5):
//   q1: 1, 1/2, 1/3 | 1, 1, 1     | 1   | 1   | 1                      | 1/3
//   q2: 0, 1/2, 1/3 | 0, 1, 1     | 1/2 | 1/2 | 1/log2(3)              | 1/3
//   q3: 0, 0, 0     | 0, 0, 0     | 0   | 0   | 0                      | 0
//   q4: 1, 1/2, 2/3 | 1/2, 1/2, 1 | 1   | 5/6 | 1.5 / (1 + 1/log2(3))  | 4/7
//   q5: all zero
inline FixtureExpectation five_query_expectation() {
    const double inv_l3 = 1.0 / std::log2(3.0);
    return {
        {2.0 / 5.0, 3.0 / 10.0, 4.0 / 15.0},
        {3.0 / 10.0, 1.0 / 2.0, 3.0 / 5.0},
        26.0 / 105.0,
        1.0 / 2.0,
        7.0 / 15.0,
        (1.0 + inv_l3 + 1.5 / (1.0 + inv_l3)) / 5.0,
    };
}

inline EvalReport evaluate_fixture(const std::vector<FixtureQuery>& queries, std::size_t k_max) {
    std::vector<QueryMetrics> metrics;
    for (const auto& q : queries)
        metrics.push_back(score_query(as_scored(q.recommended), RelevantSet(q.relevant), k_max));
    return aggregate(Algorithm::BllIs, std::move(metrics), k_max);
}

} // namespace hashrec::testing
