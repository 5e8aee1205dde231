#include "videoset/evaluator.hpp"

#include <algorithm>
#include <numeric>

#include <nlohmann/json.hpp>

#include "videoset/error.hpp"

namespace videoset {

std::vector<std::string> text_representation(const SummarySelection& summary, const VideoRecord& video) {
    validate(summary, video.size());
    std::vector<std::string> text;
    text.reserve(summary.size());
    for (auto i : summary.indices) text.push_back(video.subshots[i].annotation);
    return text;
}

std::vector<std::string> length_adjust(const GroundTruthSummary& gt, std::size_t n) {
    if (n == 0) throw ArgumentError("length_adjust: n must be at least 1");
    std::vector<std::size_t> order(gt.sentences.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return gt.sentences[a].rank < gt.sentences[b].rank; });
    order.resize(std::min(n, order.size()));
    // Sentences are stored temporally, so position order is temporal order.
    std::sort(order.begin(), order.end());
    std::vector<std::string> out;
    out.reserve(order.size());
    for (auto i : order) out.push_back(gt.sentences[i].text);
    return out;
}

EvaluationReport score_summary(const SummarySelection& summary, const VideoRecord& video,
                               const std::vector<GroundTruthSummary>& gts, Metric metric, const TextProcessor& tp) {
    if (gts.empty()) throw ArgumentError("score_summary: no ground-truth summaries");
    if (summary.indices.empty()) throw ArgumentError("score_summary: empty summary");
    if (!is_text_metric(metric)) throw ArgumentError("score_summary: " + metric_name(metric) + " is not a text metric");

    const auto candidate = text_representation(summary, video);
    EvaluationReport report;
    report.length_used = summary.size();
    report.score = -1.0;
    for (const auto& gt : gts) {
        const auto score = text_similarity(metric, candidate, length_adjust(gt, summary.size()), tp);
        if (score.f_measure > report.score) {
            report.score = score.f_measure;
            report.best_author = gt.author_id;
        }
        report.per_ground_truth.push_back({gt.author_id, score});
    }
    return report;
}

std::string serialize(const EvaluationReport& report, const RunSettings& config) {
    nlohmann::json per = nlohmann::json::array();
    for (const auto& a : report.per_ground_truth)
        per.push_back({{"author_id", a.author_id},
                       {"precision", a.score.precision},
                       {"recall", a.score.recall},
                       {"f", a.score.f_measure}});
    nlohmann::json j = {{"summary_id", report.summary_id},   {"length_used", report.length_used},
                        {"per_ground_truth", per},           {"best_author", report.best_author},
                        {"score", report.score},             {"tool_version", kToolVersion},
                        {"config", nlohmann::json(config)}};
    return j.dump(2) + "\n";
}

EvaluationReport parse_report(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text.begin(), text.end());
        EvaluationReport r;
        r.summary_id = j.at("summary_id").get<std::string>();
        r.length_used = j.at("length_used").get<std::size_t>();
        r.best_author = j.at("best_author").get<std::string>();
        r.score = j.at("score").get<double>();
        for (const auto& a : j.at("per_ground_truth")) {
            RougeScore s;
            s.precision = a.at("precision").get<double>();
            s.recall = a.at("recall").get<double>();
            s.f_measure = a.at("f").get<double>();
            r.per_ground_truth.push_back({a.at("author_id").get<std::string>(), s});
        }
        if (r.per_ground_truth.empty()) throw ValidationError("per_ground_truth", std::nullopt, "empty");
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report: ") + e.what());
    }
}

}  // namespace videoset
