#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "videoset/corpus.hpp"
#include "videoset/rouge.hpp"
#include "videoset/textproc.hpp"

namespace videoset {

struct AuthorScore {
    std::string author_id;
    RougeScore score;
};

struct EvaluationReport {
    std::string summary_id;
    std::vector<AuthorScore> per_ground_truth;
    std::string best_author;
    double score = 0.0;
    std::size_t length_used = 0;
};

/// Annotations of the selected subshots in temporal order, one sentence each.
std::vector<std::string> text_representation(const SummarySelection& summary, const VideoRecord& video);

/// The min(n, K) best-ranked sentences, returned in temporal order.
std::vector<std::string> length_adjust(const GroundTruthSummary& gt, std::size_t n);

/// max over ground truths of S(T(C), length_adjust(g, |C|)); ties go to the
/// earliest ground truth. Only text metrics are accepted.
EvaluationReport score_summary(const SummarySelection& summary, const VideoRecord& video,
                               const std::vector<GroundTruthSummary>& gts, Metric metric = Metric::RougeSU,
                               const TextProcessor& tp = TextProcessor::standard());

/// Resolved run settings echoed into output files.
using RunSettings = std::map<std::string, std::string>;

inline constexpr const char* kToolVersion = "1.0.0";

/// Canonical JSON: {summary_id, length_used, per_ground_truth:[{author_id,
/// precision, recall, f}], best_author, score, tool_version, config}.
std::string serialize(const EvaluationReport& report, const RunSettings& config = {});
EvaluationReport parse_report(std::string_view json);

}  // namespace videoset
