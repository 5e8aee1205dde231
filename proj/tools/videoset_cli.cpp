// videoset command-line tool: evaluate, summarize, features, correlate,
// compare and sample-pairs.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "videoset/videoset.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace videoset;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

// Bad or missing flags discovered after parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string stopwords;
    std::uint64_t seed = 0;
    std::string out;
};

struct Options {
    Common common;
    std::string annotations, ground_truth, summary, features, reference_subshots;
    std::string metric = "rouge-su";
    std::string method, author, frames_dir, video_id;
    std::string scores_a, scores_b;
    std::string mode = "pairs", pairs, human;
    std::size_t n = 0, m = 0, count = 100;
    double lambda = 0.5;
    int bins_per_channel = 16;
    bool emit_judgments = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--stopwords", c.stopwords, "Stopword list replacing the bundled SMART list");
    cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
    cmd->add_option("--out", c.out, "Output file (stdout when omitted)");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void emit(const Common& c, const std::string& text) {
    if (c.out.empty())
        std::cout << text;
    else
        write_file_atomic(c.out, text);
}

void require(const std::string& value, const char* flag, const std::string& why) {
    if (value.empty()) throw UsageError(std::string(flag) + " is required " + why);
}

void require_file(const std::string& path, const char* flag) {
    if (path.empty()) return;
    if (!fs::is_regular_file(path)) throw IoError(std::string(flag) + ": cannot read '" + path + "'");
}

TextProcessor make_processor(const Common& c) {
    if (c.stopwords.empty()) return TextProcessor();
    return TextProcessor(StopwordList::load(c.stopwords));
}

const GroundTruthSummary& pick_author(const GroundTruthSet& gts, const std::string& author) {
    if (author.empty()) return gts.summaries.front();
    for (const auto& g : gts.summaries)
        if (g.author_id == author) return g;
    throw ValidationError("author_id", std::nullopt, "no ground truth by author '" + author + "'");
}

void check_same_video(const std::string& a, const std::string& b, const char* what) {
    if (a != b) throw ValidationError("video_id", std::nullopt, std::string(what) + " is for video '" + b + "', expected '" + a + "'");
}

void check_feature_count(const SubshotFeatures& f, const VideoRecord& v) {
    check_same_video(v.video_id, f.video_id, "features file");
    if (f.subshots.size() != v.size())
        throw ValidationError("subshots", std::nullopt,
                              "features cover " + std::to_string(f.subshots.size()) + " subshots, annotations " +
                                  std::to_string(v.size()));
}

Metric metric_flag(const std::string& name) {
    try {
        return parse_metric(name);
    } catch (const ArgumentError& e) {
        throw UsageError(std::string("--metric: ") + e.what());
    }
}

json indices_json(const SummarySelection& s) { return json(s.indices); }

// ---- evaluate --------------------------------------------------------------

int run_evaluate(const Options& o) {
    const Metric metric = metric_flag(o.metric);
    require(o.annotations, "--annotations", "for evaluate");
    require(o.summary, "--summary", "for evaluate");
    if (metric == Metric::Pixel) {
        require(o.features, "--features", "for the pixel metric");
        require(o.reference_subshots, "--reference-subshots", "for the pixel metric");
    } else {
        require(o.ground_truth, "--ground-truth", "for text metrics");
    }
    for (auto [p, f] : {std::pair{&o.annotations, "--annotations"}, {&o.summary, "--summary"},
                        {&o.ground_truth, "--ground-truth"}, {&o.features, "--features"},
                        {&o.reference_subshots, "--reference-subshots"}, {&o.common.stopwords, "--stopwords"}})
        require_file(*p, f);

    const auto video = load_annotations(o.annotations);
    const auto summary = load_summary(o.summary, video);
    check_same_video(video.video_id, summary.video_id, "summary");
    const std::string summary_id = fs::path(o.summary).stem().string();

    RunSettings config{{"command", "evaluate"}, {"metric", metric_name(metric)}, {"annotations", o.annotations},
                       {"summary", o.summary}};
    if (metric == Metric::Pixel) {
        const auto features = load_features(o.features);
        check_feature_count(features, video);
        const auto reference = load_summary(o.reference_subshots, video);
        config["features"] = o.features;
        config["reference_subshots"] = o.reference_subshots;
        const double d = pixel_summary_distance(summary, reference, features);
        json out{{"summary_id", summary_id},
                 {"length_used", summary.size()},
                 {"pixel_distance", d},
                 {"score", -d},
                 {"tool_version", kToolVersion},
                 {"config", config}};
        emit(o.common, dump(out));
        return 0;
    }

    const auto tp = make_processor(o.common);
    const auto gts = load_ground_truths(o.ground_truth);
    check_same_video(video.video_id, gts.video_id, "ground-truth file");
    config["ground_truth"] = o.ground_truth;
    if (!o.common.stopwords.empty()) config["stopwords"] = o.common.stopwords;
    auto report = score_summary(summary, video, gts.summaries, metric, tp);
    report.summary_id = summary_id;
    emit(o.common, serialize(report, config));
    return 0;
}

// ---- summarize -------------------------------------------------------------

int run_summarize(const Options& o) {
    static const std::set<std::string> methods{"uniform", "cluster", "mmr", "greedy-bow", "sentence-dp"};
    if (!methods.count(o.method)) throw UsageError("--method must be one of uniform, cluster, mmr, greedy-bow, sentence-dp");
    require(o.annotations, "--annotations", "for summarize");
    if (o.n == 0) throw UsageError("--n must be at least 1");
    const bool visual = o.method == "cluster" || o.method == "mmr";
    const bool textual = o.method == "greedy-bow" || o.method == "sentence-dp";
    if (visual) require(o.features, "--features", "for --method " + o.method);
    if (textual) require(o.ground_truth, "--ground-truth", "for --method " + o.method);
    if (!(o.lambda >= 0.0 && o.lambda <= 1.0)) throw UsageError("--lambda must lie in [0, 1]");
    for (auto [p, f] : {std::pair{&o.annotations, "--annotations"}, {&o.features, "--features"},
                        {&o.ground_truth, "--ground-truth"}, {&o.common.stopwords, "--stopwords"}})
        require_file(*p, f);

    const auto video = load_annotations(o.annotations);
    if (o.n > video.size())
        throw ValidationError("n", std::nullopt,
                              std::to_string(o.n) + " exceeds the video's " + std::to_string(video.size()) + " subshots");

    SummarySelection result;
    if (o.method == "uniform") {
        result = uniform_sample(video.size(), o.n);
    } else if (visual) {
        const auto features = load_features(o.features);
        check_feature_count(features, video);
        result = o.method == "cluster" ? histogram_cluster(features, o.n, o.common.seed)
                                       : video_mmr(features, MmrParams{o.lambda, o.n});
    } else {
        const auto tp = make_processor(o.common);
        const auto gts = load_ground_truths(o.ground_truth);
        check_same_video(video.video_id, gts.video_id, "ground-truth file");
        const auto& gt = pick_author(gts, o.author);
        result = o.method == "greedy-bow" ? greedy_bow(video, gt, o.n, tp) : sentence_dp(video, gt, o.n, tp);
    }
    result.video_id = video.video_id;
    emit(o.common, serialize(result));
    return 0;
}

// ---- features --------------------------------------------------------------

int run_features(const Options& o) {
    require(o.frames_dir, "--frames-dir", "for features");
    if (o.bins_per_channel < 1 || 256 % o.bins_per_channel != 0)
        throw UsageError("--bins-per-channel must divide 256");
    require(o.video_id, "--video-id", "for features");
    emit(o.common, serialize(extract_features(o.frames_dir, o.video_id, o.bins_per_channel)));
    return 0;
}

// ---- correlate -------------------------------------------------------------

std::map<std::string, double> load_scores(const std::string& path) {
    const auto text = read_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("items") || !j["items"].is_array())
        throw ParseError(path + ": expected an object with an 'items' array");
    std::map<std::string, double> scores;
    for (std::size_t i = 0; i < j["items"].size(); ++i) {
        const auto& item = j["items"][i];
        if (!item.is_object() || !item.contains("id") || !item["id"].is_string() || !item.contains("score") ||
            !item["score"].is_number())
            throw ParseError(path + ": items[" + std::to_string(i) + "] needs a string 'id' and numeric 'score'");
        if (!scores.emplace(item["id"].get<std::string>(), item["score"].get<double>()).second)
            throw ValidationError("items.id", i, "duplicate id '" + item["id"].get<std::string>() + "'");
    }
    return scores;
}

int run_correlate(const Options& o) {
    require(o.scores_a, "--scores-a", "for correlate");
    require(o.scores_b, "--scores-b", "for correlate");
    require_file(o.scores_a, "--scores-a");
    require_file(o.scores_b, "--scores-b");
    const auto a = load_scores(o.scores_a);
    const auto b = load_scores(o.scores_b);
    std::vector<double> xs, ys;
    for (const auto& [id, score] : a) {
        auto it = b.find(id);
        if (it == b.end()) throw ValidationError("items.id", std::nullopt, "'" + id + "' missing from " + o.scores_b);
        xs.push_back(score);
        ys.push_back(it->second);
    }
    if (b.size() != a.size()) throw ValidationError("items.id", std::nullopt, o.scores_b + " has ids missing from " + o.scores_a);
    const double rho = spearman(xs, ys);
    json out{{"n", xs.size()},
             {"spearman", rho},
             {"tool_version", kToolVersion},
             {"config", {{"command", "correlate"}, {"scores_a", o.scores_a}, {"scores_b", o.scores_b}}}};
    emit(o.common, dump(out));
    return 0;
}

// ---- sample-pairs ----------------------------------------------------------

json pairs_json(const std::vector<SummaryPair>& pairs) {
    json arr = json::array();
    for (const auto& [a, b] : pairs) arr.push_back({{"first", indices_json(a)}, {"second", indices_json(b)}});
    return arr;
}

int run_sample_pairs(const Options& o) {
    if (o.m == 0 || o.n == 0) throw UsageError("--m and --n are required and must be positive");
    if (o.n > o.m) throw UsageError("--n must not exceed --m");
    const auto pairs = sample_summary_pairs(o.m, o.n, o.count, o.common.seed);
    json out{{"video_id", o.video_id.empty() ? "sampled" : o.video_id},
             {"seed", o.common.seed},
             {"m", o.m},
             {"n", o.n},
             {"pairs", pairs_json(pairs)}};
    emit(o.common, dump(out));
    return 0;
}

// ---- compare ---------------------------------------------------------------

json parse_json_file(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::vector<SummaryPair> load_pairs(const std::string& path, const VideoRecord& video) {
    const auto j = parse_json_file(path);
    if (!j.is_object() || !j.contains("pairs") || !j["pairs"].is_array()) throw ParseError(path + ": expected a 'pairs' array");
    std::vector<SummaryPair> pairs;
    for (std::size_t i = 0; i < j["pairs"].size(); ++i) {
        const auto& p = j["pairs"][i];
        SummaryPair sp;
        try {
            sp.first = {video.video_id, p.at("first").get<std::vector<std::size_t>>()};
            sp.second = {video.video_id, p.at("second").get<std::vector<std::size_t>>()};
        } catch (const json::exception& e) {
            throw ParseError(path + ": pairs[" + std::to_string(i) + "]: " + e.what());
        }
        try {
            validate(sp.first, video.size());
            validate(sp.second, video.size());
        } catch (const ValidationError& e) {
            throw ValidationError("pairs", i, e.what());
        }
        pairs.push_back(std::move(sp));
    }
    return pairs;
}

json judgment_json(const PairJudgment& j) {
    return {{"verdict", to_string(j.verdict)}, {"first_score", j.first_score}, {"second_score", j.second_score}};
}

struct HumanVerdicts {
    std::map<std::vector<std::size_t>, Verdict> by_key;
};

// Pairs mode keys on {pair}; dense mode on {ref, x, y}.
HumanVerdicts load_human(const std::string& path, bool dense) {
    const auto j = parse_json_file(path);
    if (!j.is_object() || !j.contains("judgments") || !j["judgments"].is_array())
        throw ParseError(path + ": expected a 'judgments' array");
    HumanVerdicts h;
    for (std::size_t i = 0; i < j["judgments"].size(); ++i) {
        const auto& r = j["judgments"][i];
        std::vector<std::size_t> key;
        Verdict v;
        try {
            if (dense)
                key = {r.at("ref").get<std::size_t>(), r.at("x").get<std::size_t>(), r.at("y").get<std::size_t>()};
            else
                key = {r.at("pair").get<std::size_t>()};
            v = parse_verdict(r.at("verdict").get<std::string>());
        } catch (const json::exception& e) {
            throw ParseError(path + ": judgments[" + std::to_string(i) + "]: " + e.what());
        }
        if (!h.by_key.emplace(key, v).second) throw ValidationError("judgments", i, "duplicate record");
    }
    return h;
}

json case_counts_json(const CaseCounts& c) {
    json out;
    for (std::size_t k = 0; k < c.size(); ++k) out[to_string(static_cast<CaseLabel>(k))] = c[k];
    return out;
}

int run_compare(const Options& o) {
    if (o.mode != "pairs" && o.mode != "dense") throw UsageError("--mode must be 'pairs' or 'dense'");
    const Metric metric = metric_flag(o.metric);
    require(o.annotations, "--annotations", "for compare");
    const bool dense = o.mode == "dense";
    if (dense) {
        require(o.features, "--features", "for --mode dense");
        if (metric == Metric::Pixel) throw UsageError("--mode dense needs a text --metric; the pixel side is always computed");
    } else {
        require(o.pairs, "--pairs", "for --mode pairs");
        if (metric == Metric::Pixel || !o.features.empty()) {
            require(o.features, "--features", "for pixel judgments");
            require(o.reference_subshots, "--reference-subshots", "for pixel judgments");
        }
        if (metric != Metric::Pixel) require(o.ground_truth, "--ground-truth", "for text metrics");
    }
    for (auto [p, f] : {std::pair{&o.annotations, "--annotations"}, {&o.ground_truth, "--ground-truth"},
                        {&o.features, "--features"}, {&o.reference_subshots, "--reference-subshots"},
                        {&o.pairs, "--pairs"}, {&o.human, "--human"}, {&o.common.stopwords, "--stopwords"}})
        require_file(*p, f);

    const auto video = load_annotations(o.annotations);
    const auto tp = make_processor(o.common);
    std::optional<SubshotFeatures> features;
    if (!o.features.empty()) {
        features = load_features(o.features);
        check_feature_count(*features, video);
    }
    std::optional<HumanVerdicts> human;
    if (!o.human.empty()) human = load_human(o.human, dense);

    json config{{"command", "compare"}, {"mode", o.mode}, {"metric", metric_name(metric)}, {"annotations", o.annotations}};
    for (auto [p, k] : {std::pair{&o.ground_truth, "ground_truth"}, {&o.features, "features"},
                        {&o.reference_subshots, "reference_subshots"}, {&o.pairs, "pairs"}, {&o.human, "human"},
                        {&o.common.stopwords, "stopwords"}})
        if (!p->empty()) config[k] = *p;
    json out{{"tool_version", kToolVersion}, {"config", config}};
    std::vector<std::pair<PairJudgment, Verdict>> matched;

    if (dense) {
        const auto text_sim = text_similarity_matrix(video, metric, tp);
        const auto triples = dense_subshot_judgments(text_sim, pixel_similarity_matrix(*features));
        out["triples"] = triples.size();
        out["case_counts"] = case_counts_json(count_cases(triples));
        if (o.emit_judgments) {
            json arr = json::array();
            for (const auto& t : triples)
                arr.push_back({{"ref", t.ref}, {"x", t.x}, {"y", t.y}, {"vset", judgment_json(t.vset)},
                               {"pb", judgment_json(t.pb)}, {"case", to_string(t.label)}});
            out["judgments"] = arr;
        }
        if (human) {
            const auto m = video.size();
            for (const auto& [key, verdict] : human->by_key) {
                const auto ref = key[0], x = key[1], y = key[2];
                if (ref >= m || x >= m || y >= m || x >= y || ref == x || ref == y)
                    throw ValidationError("judgments", std::nullopt, "triple (" + std::to_string(ref) + ", " +
                                                                         std::to_string(x) + ", " + std::to_string(y) +
                                                                         ") is not a canonical distinct triple");
                const auto r = static_cast<Eigen::Index>(ref);
                matched.emplace_back(judge(text_sim(Eigen::Index(x), r), text_sim(Eigen::Index(y), r)), verdict);
            }
        }
    } else {
        const auto pairs = load_pairs(o.pairs, video);
        std::optional<GroundTruthSet> gts;
        if (!o.ground_truth.empty()) {
            gts = load_ground_truths(o.ground_truth);
            check_same_video(video.video_id, gts->video_id, "ground-truth file");
        }
        std::optional<SummarySelection> reference;
        if (!o.reference_subshots.empty()) reference = load_summary(o.reference_subshots, video);

        json arr = json::array();
        std::vector<PairJudgment> automatic;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto& [a, b] = pairs[i];
            json rec{{"pair", i}};
            if (metric != Metric::Pixel) {
                const auto j = judge_summary_pair(a, b, video, gts->summaries, metric, tp);
                rec["vset"] = judgment_json(j);
                automatic.push_back(j);
            }
            if (features) {
                const auto pb = judge_summary_pair_pixel(a, b, *reference, *features);
                rec["pb"] = judgment_json(pb);
                if (metric == Metric::Pixel) automatic.push_back(pb);
            }
            arr.push_back(rec);
        }
        out["judgments"] = arr;
        if (human) {
            for (const auto& [key, verdict] : human->by_key) {
                if (key[0] >= pairs.size())
                    throw ValidationError("judgments.pair", std::nullopt, "pair " + std::to_string(key[0]) + " out of range");
                matched.emplace_back(automatic[key[0]], verdict);
            }
        }
    }
    if (human) {
        out["human_judgments"] = matched.size();
        out["agreement"] = matched.empty() ? json(nullptr) : json(agreement_rate(matched));
    }
    emit(o.common, dump(out));
    return 0;
}

void report_error(const char* kind, const std::string& message, const ValidationError* v = nullptr) {
    json err{{"kind", kind}, {"message", message}};
    if (v) {
        err["field"] = v->field();
        if (v->index()) err["index"] = *v->index();
    }
    std::cerr << json{{"error", err}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Video summary evaluation and baseline summarization"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    Options o;

    auto* evaluate = app.add_subcommand("evaluate", "Score a summary against ground-truth summaries");
    evaluate->add_option("--annotations", o.annotations, "Subshot annotations file");
    evaluate->add_option("--ground-truth", o.ground_truth, "Ground-truth summaries file");
    evaluate->add_option("--summary", o.summary, "Summary file (indices, keyframe times or spans)");
    evaluate->add_option("--metric", o.metric, "rouge-su | rouge-1 | rouge-2 | pixel")->capture_default_str();
    evaluate->add_option("--features", o.features, "Features file (pixel metric)");
    evaluate->add_option("--reference-subshots", o.reference_subshots, "Ground-truth subshots as a summary file (pixel metric)");

    auto* summarize = app.add_subcommand("summarize", "Produce a baseline summary");
    summarize->add_option("--method", o.method, "uniform | cluster | mmr | greedy-bow | sentence-dp")->required();
    summarize->add_option("--annotations", o.annotations, "Subshot annotations file");
    summarize->add_option("--features", o.features, "Features file (cluster, mmr)");
    summarize->add_option("--ground-truth", o.ground_truth, "Ground-truth summaries file (greedy-bow, sentence-dp)");
    summarize->add_option("--author", o.author, "Ground-truth author to follow (default: first)");
    summarize->add_option("--n", o.n, "Number of subshots")->required();
    summarize->add_option("--lambda", o.lambda, "MMR trade-off")->capture_default_str();

    auto* features = app.add_subcommand("features", "Compute color histograms from PPM frames");
    features->add_option("--frames-dir", o.frames_dir, "Directory of frame_<subshot>_<k>.ppm files");
    features->add_option("--video-id", o.video_id, "Video id recorded in the features file");
    features->add_option("--bins-per-channel", o.bins_per_channel, "Histogram bins per channel")->capture_default_str();

    auto* correlate = app.add_subcommand("correlate", "Spearman correlation between two score lists");
    correlate->add_option("--scores-a", o.scores_a, "Rankings file {items:[{id, score}]}");
    correlate->add_option("--scores-b", o.scores_b, "Rankings file {items:[{id, score}]}");

    auto* compare = app.add_subcommand("compare", "Pairwise judgments and agreement analysis");
    compare->add_option("--mode", o.mode, "pairs | dense")->capture_default_str();
    compare->add_option("--annotations", o.annotations, "Subshot annotations file");
    compare->add_option("--ground-truth", o.ground_truth, "Ground-truth summaries file (pairs mode)");
    compare->add_option("--pairs", o.pairs, "Summary pairs file, as written by sample-pairs");
    compare->add_option("--metric", o.metric, "rouge-su | rouge-1 | rouge-2 | pixel")->capture_default_str();
    compare->add_option("--features", o.features, "Features file");
    compare->add_option("--reference-subshots", o.reference_subshots, "Ground-truth subshots (pixel judgments)");
    compare->add_option("--human", o.human, "Human verdicts file");
    compare->add_flag("--emit-judgments", o.emit_judgments, "List every triple in dense mode");

    auto* sample = app.add_subcommand("sample-pairs", "Draw random summary pairs");
    sample->add_option("--m", o.m, "Subshot count")->required();
    sample->add_option("--n", o.n, "Subshots per summary")->required();
    sample->add_option("--count", o.count, "Number of pairs")->capture_default_str();
    sample->add_option("--video-id", o.video_id, "Video id recorded in the output");

    for (auto* cmd : {evaluate, summarize, features, correlate, compare, sample}) add_common(cmd, o.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error("usage", e.what());
        return kExitUsage;
    }

    try {
        if (evaluate->parsed()) return run_evaluate(o);
        if (summarize->parsed()) return run_summarize(o);
        if (features->parsed()) return run_features(o);
        if (correlate->parsed()) return run_correlate(o);
        if (compare->parsed()) return run_compare(o);
        if (sample->parsed()) return run_sample_pairs(o);
    } catch (const UsageError& e) {
        report_error("usage", e.what());
        return kExitUsage;
    } catch (const ValidationError& e) {
        report_error(e.kind(), e.what(), &e);
        return kExitData;
    } catch (const Error& e) {
        report_error(e.kind(), e.what());
        return kExitData;
    }
    return kExitUsage;
}
