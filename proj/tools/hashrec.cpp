// hashrec: generate / analyze / recommend / evaluate.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hashrec/hashrec.hpp"

namespace fs = std::filesystem;
using namespace hashrec;

namespace {

struct GlobalOptions {
    unsigned threads = 1;
    bool quiet = false;
};

struct InputOptions {
    std::string tweets;
    std::string follows;
    std::string stopwords;
};

void note(const GlobalOptions& g, const std::string& msg) {
    if (!g.quiet) std::cerr << msg << '\n';
}

std::unordered_set<std::string> load_stopwords(const std::string& path) {
    std::unordered_set<std::string> words;
    if (path.empty()) return words;
    auto in = io::open_input(path);
    std::string line;
    while (std::getline(in, line))
        for (auto& tok : tokenize(line)) words.insert(std::move(tok));
    return words;
}

void strip_stopwords(std::vector<std::string>& tokens, const std::unordered_set<std::string>& stop) {
    if (stop.empty()) return;
    std::erase_if(tokens, [&](const std::string& t) { return stop.contains(t); });
}

Corpus load_corpus(const InputOptions& in, const GlobalOptions& g) {
    std::vector<Tweet> tweets;
    {
        auto stream = io::open_input(in.tweets);
        try {
            tweets = parse_tweets(stream);
        } catch (const DataError& e) {
            throw DataError(in.tweets + ": " + e.what());
        }
    }
    FollowParseResult follows;
    {
        auto stream = io::open_input(in.follows);
        try {
            follows = parse_follows(stream);
        } catch (const DataError& e) {
            throw DataError(in.follows + ": " + e.what());
        }
    }
    if (follows.self_loops > 0)
        note(g, "warning: dropped " + std::to_string(follows.self_loops) + " self-loop edge(s)");
    auto stop = load_stopwords(in.stopwords);
    if (!stop.empty())
        for (auto& t : tweets)
            if (t.tokens) strip_stopwords(*t.tokens, stop);
    return build_corpus(std::move(tweets), std::move(follows.graph));
}

void add_input_options(CLI::App* cmd, InputOptions& in, bool stopwords) {
    cmd->add_option("--tweets", in.tweets, "Tweets, JSON Lines")->required();
    cmd->add_option("--follows", in.follows, "Follow graph, follower<TAB>followee")->required();
    if (stopwords) cmd->add_option("--stopwords", in.stopwords, "Optional stop-word file, one word per line");
}

void add_activation_options(CLI::App* cmd, ActivationParams& p) {
    cmd->add_option("--beta", p.beta, "Weight of the individual component")->capture_default_str();
    cmd->add_option("--d-ind", p.d_individual, "Decay exponent, individual history")->capture_default_str();
    cmd->add_option("--d-soc", p.d_social, "Decay exponent, followee history")->capture_default_str();
    cmd->add_option("--min-age", p.min_age, "Age floor in seconds")->capture_default_str();
}

fs::path prepare_out_dir(const std::string& dir) {
    fs::path out(dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw DataError("cannot create output directory " + dir + ": " + ec.message());
    return out;
}

// generate ------------------------------------------------------------------

struct GenerateOptions {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
};

int run_generate(const GenerateOptions& opt, const GlobalOptions& g) {
    synth::GenConfig config;
    {
        auto in = io::open_input(opt.config);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw UsageError(opt.config + ": malformed JSON: " + e.what());
        }
        config = synth::config_from_json(j);
    }
    if (opt.seed) config.seed = *opt.seed;
    config.validate();
    auto out = prepare_out_dir(opt.out);
    auto generated = synth::generate(config);

    std::ostringstream tweets;
    write_tweets(tweets, generated.tweets);
    std::ostringstream follows;
    follows << "# generator=hashrec-synth rng=" << synth::kRngAlgorithm << " seed=" << config.seed << '\n';
    write_follows(follows, generated.graph);

    nlohmann::ordered_json meta;
    meta["rng"] = synth::kRngAlgorithm;
    meta["config"] = config;
    meta["stats"] = synth::stats_json(generated.stats);

    io::write_file_atomic(out / "tweets.jsonl", tweets.str());
    io::write_file_atomic(out / "follows.tsv", follows.str());
    io::write_file_atomic(out / "generator.json", meta.dump(2) + "\n");
    note(g, "generated " + std::to_string(generated.tweets.size()) + " tweets, " +
                std::to_string(generated.graph.edge_count()) + " follow edges");
    return 0;
}

// analyze -------------------------------------------------------------------

struct AnalyzeOptions {
    InputOptions input;
    std::string out;
    std::string unit = "hours";
    int buckets_per_decade = 20;
};

std::string decay_csv(const AgeHistogram& hist, ReuseKind kind, int per_decade) {
    std::ostringstream csv;
    csv << "# kind=" << to_string(kind) << " time_unit=" << to_string(hist.unit)
        << " buckets_per_decade=" << per_decade << " below_range=" << hist.below_range << '\n';
    try {
        auto fit = fit_power_law(hist);
        csv << "# fit_slope=" << io::format_double(fit.slope) << " fit_intercept=" << io::format_double(fit.intercept)
            << " r_squared=" << io::format_double(fit.r_squared) << '\n';
    } catch (const DataError& e) {
        csv << "# fit unavailable: " << e.what() << '\n';
    }
    csv << "age_midpoint,count,density\n";
    for (std::size_t i = 0; i < hist.counts.size(); ++i)
        csv << io::format_double(hist.midpoint(i)) << ',' << hist.counts[i] << ','
            << io::format_double(static_cast<double>(hist.counts[i]) / hist.width(i)) << '\n';
    return csv.str();
}

TimeUnit parse_time_unit(const std::string& name) {
    if (name == "seconds") return TimeUnit::Seconds;
    if (name == "days") return TimeUnit::Days;
    return TimeUnit::Hours;
}

int run_analyze(const AnalyzeOptions& opt, const GlobalOptions& g) {
    const auto unit = parse_time_unit(opt.unit);
    auto corpus = load_corpus(opt.input, g);
    auto out = prepare_out_dir(opt.out);

    std::ostringstream cats;
    cats << "category,count,share\n";
    for (const auto& [category, share] : category_distribution(corpus))
        cats << to_string(category) << ',' << share.count << ',' << io::format_double(share.share) << '\n';

    std::vector<std::pair<fs::path, std::string>> files{{out / "categories.csv", cats.str()}};
    for (auto kind : {ReuseKind::Individual, ReuseKind::Social}) {
        auto hist = reuse_age_histogram(corpus, kind, unit, opt.buckets_per_decade);
        files.emplace_back(out / ("decay_" + std::string(to_string(kind)) + ".csv"),
                           decay_csv(hist, kind, opt.buckets_per_decade));
    }
    for (const auto& [path, contents] : files) io::write_file_atomic(path, contents);
    note(g, "analyzed " + std::to_string(corpus.tweets.size()) + " tweets");
    return 0;
}

// recommend -----------------------------------------------------------------

struct RecommendOptions {
    InputOptions input;
    std::string user;
    std::int64_t now = 0;
    std::size_t k = 10;
    ActivationParams params;
    std::optional<std::string> text;
    double lambda = 0.5;
};

int run_recommend(const RecommendOptions& opt, const GlobalOptions& g) {
    opt.params.validate();
    if (!(opt.lambda >= 0 && opt.lambda <= 1)) throw UsageError("--lambda must be in [0,1]");
    auto corpus = load_corpus(opt.input, g);
    const Timestamp now{opt.now};

    // Only the past is visible to the recommender.
    std::vector<Tweet> past;
    for (const auto& t : corpus.tweets)
        if (t.time < now) past.push_back(t);
    auto index = build_usage_index(past);

    ScoredList rec;
    if (opt.text) {
        auto tokens = tokenize(*opt.text);
        strip_stopwords(tokens, load_stopwords(opt.input.stopwords));
        auto profile = build_profiles(past);
        rec = recommend_bll_isc(index, corpus.graph, profile, opt.user, now, tokens, opt.params, opt.lambda, opt.k);
    } else {
        rec = recommend_bll_is(index, corpus.graph, opt.user, now, opt.params, opt.k);
    }

    auto arr = nlohmann::ordered_json::array();
    for (const auto& s : rec) arr.push_back({{"hashtag", s.hashtag}, {"score", s.score}});
    std::cout << arr.dump(2) << '\n';
    return 0;
}

// evaluate ------------------------------------------------------------------

struct EvaluateOptions {
    InputOptions input;
    std::string out;
    int scenario = 1;
    std::string algorithms = "bll_is,bll_isc,mp,mp_u,mp_s,mr";
    int holdout = 1;
    std::size_t k_max = 10;
    ActivationParams params;
    double lambda = 0.5;
};

int run_evaluate(const EvaluateOptions& opt, const GlobalOptions& g) {
    EvalConfig config;
    config.scenario = opt.scenario;
    config.algorithms = parse_algorithm_list(opt.algorithms);
    config.params = opt.params;
    config.lambda = opt.lambda;
    config.k_max = opt.k_max;
    config.threads = g.threads;
    config.params.validate();
    if (opt.holdout < 1) throw UsageError("--holdout must be >= 1");
    if (!(opt.lambda >= 0 && opt.lambda <= 1)) throw UsageError("--lambda must be in [0,1]");

    auto corpus = load_corpus(opt.input, g);
    auto split = chronological_split(corpus, opt.holdout);
    auto out = prepare_out_dir(opt.out);
    auto reports = run_eval(split.train, split.test, config);

    io::write_file_atomic(out / "metrics.json", metrics_json(reports, config));
    io::write_file_atomic(out / "pr_curve.csv", pr_curve_csv(reports));
    for (const auto& r : reports)
        note(g, std::string(to_string(r.algorithm)) + ": P@1=" + io::format_double(r.precision[0]) +
                    " R@" + std::to_string(r.k_max) + "=" + io::format_double(r.recall.back()) +
                    " MRR=" + io::format_double(r.mrr) + " (" + std::to_string(r.n_test_queries) + " queries)");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-aware hashtag recommendation: reuse analysis, BLL recommenders, offline evaluation"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--threads", global.threads, "Worker threads for evaluation")
        ->capture_default_str()
        ->check(CLI::Range(1u, 1024u));
    app.add_flag("--quiet", global.quiet, "Suppress progress and warning messages");

    GenerateOptions gen;
    auto* gen_cmd = app.add_subcommand("generate", "Write a seeded synthetic corpus");
    gen_cmd->add_option("--config", gen.config, "Generator config (JSON)")->required();
    gen_cmd->add_option("--out", gen.out, "Output directory")->required();
    gen_cmd->add_option("--seed", gen.seed, "Override the config seed");

    AnalyzeOptions ana;
    auto* ana_cmd = app.add_subcommand("analyze", "Reuse categories and reuse-age power-law fits");
    add_input_options(ana_cmd, ana.input, false);
    ana_cmd->add_option("--out", ana.out, "Output directory")->required();
    ana_cmd->add_option("--time-unit", ana.unit, "Histogram time unit")
        ->capture_default_str()
        ->check(CLI::IsMember({"seconds", "hours", "days"}));
    ana_cmd->add_option("--buckets-per-decade", ana.buckets_per_decade, "Log-spaced buckets per decade")
        ->capture_default_str()
        ->check(CLI::Range(1, 1000));

    RecommendOptions rec;
    auto* rec_cmd = app.add_subcommand("recommend", "Top-k hashtags for one user at one time (JSON)");
    add_input_options(rec_cmd, rec.input, true);
    rec_cmd->add_option("--user", rec.user, "User id")->required();
    rec_cmd->add_option("--now", rec.now, "Query time, seconds since epoch")->required()->check(CLI::NonNegativeNumber);
    rec_cmd->add_option("--k", rec.k, "Number of hashtags")->capture_default_str()->check(CLI::Range(1ul, 1000000ul));
    add_activation_options(rec_cmd, rec.params);
    rec_cmd->add_option("--text", rec.text, "Text of the tweet being written (switches on BLL_I,S,C)");
    rec_cmd->add_option("--lambda", rec.lambda, "Weight of BLL_I,S against content")->capture_default_str();

    EvaluateOptions ev;
    auto* ev_cmd = app.add_subcommand("evaluate", "Offline top-k evaluation on a chronological split");
    add_input_options(ev_cmd, ev.input, true);
    ev_cmd->add_option("--out", ev.out, "Output directory")->required();
    ev_cmd->add_option("--scenario", ev.scenario, "1: without current tweet text, 2: with it")
        ->capture_default_str()
        ->check(CLI::IsMember({1, 2}));
    ev_cmd->add_option("--algorithms", ev.algorithms, "Comma-separated algorithm list")->capture_default_str();
    ev_cmd->add_option("--holdout", ev.holdout, "Latest hashtag tweets held out per user")->capture_default_str();
    ev_cmd->add_option("--k-max", ev.k_max, "Largest k evaluated")->capture_default_str()->check(CLI::Range(1ul, 1000ul));
    add_activation_options(ev_cmd, ev.params);
    ev_cmd->add_option("--lambda", ev.lambda, "Weight of BLL_I,S against content")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*gen_cmd) return run_generate(gen, global);
        if (*ana_cmd) return run_analyze(ana, global);
        if (*rec_cmd) return run_recommend(rec, global);
        if (*ev_cmd) return run_evaluate(ev, global);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
