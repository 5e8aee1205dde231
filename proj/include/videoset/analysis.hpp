#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "videoset/corpus.hpp"
#include "videoset/rouge.hpp"
#include "videoset/textproc.hpp"

namespace videoset {

enum class Verdict { BothZero, BothEqual, FirstCloser, SecondCloser };

struct PairJudgment {
    Verdict verdict = Verdict::BothZero;
    double first_score = 0.0;
    double second_score = 0.0;
};

enum class CaseLabel { BothZero, BothEqual, InequalAgreesPB, InequalDisagreesPB };

/// Similarities at or below this are "no similarity" (text metrics only).
inline constexpr double kZeroThreshold = 0.0;
/// Similarities closer than this are equal.
inline constexpr double kTieTolerance = 1e-9;

/// Applies the verdict rules to two similarities (higher = closer). With
/// `zero_floor` false the BothZero verdict is never produced; pixel
/// similarities are negated distances and have no natural zero.
PairJudgment judge(double first, double second, bool zero_floor = true);

/// Average ranks (1-based) with ties sharing the mean of their positions.
Eigen::VectorXd average_ranks(std::span<const double> values);

/// Pearson correlation of average ranks. Throws ArgumentError on length
/// mismatch, fewer than two items, or a constant input.
double spearman(std::span<const double> xs, std::span<const double> ys);

PairJudgment judge_summary_pair(const SummarySelection& a, const SummarySelection& b, const VideoRecord& video,
                                const std::vector<GroundTruthSummary>& gts, Metric metric = Metric::RougeSU,
                                const TextProcessor& tp = TextProcessor::standard());

/// Pixel-based variant: similarity is the negated pixel_summary_distance to
/// the ground-truth subshots.
PairJudgment judge_summary_pair_pixel(const SummarySelection& a, const SummarySelection& b,
                                      const SummarySelection& gt_subshots, const SubshotFeatures& features);

PairJudgment judge_subshot_pair(std::size_t x, std::size_t y, std::size_t ref, const VideoRecord& video,
                                Metric metric = Metric::RougeSU, const TextProcessor& tp = TextProcessor::standard());

PairJudgment judge_subshot_pair_pixel(std::size_t x, std::size_t y, std::size_t ref, const SubshotFeatures& features);

CaseLabel classify_case(const PairJudgment& vset, const PairJudgment& pb);

using SummaryPair = std::pair<SummarySelection, SummarySelection>;

/// Each summary draws n of m indices by a partial Fisher-Yates shuffle over
/// splitmix64, then sorts them. One generator stream serves all pairs.
std::vector<SummaryPair> sample_summary_pairs(std::size_t m, std::size_t n, std::size_t count, std::uint64_t seed);

double agreement_rate(std::span<const std::pair<PairJudgment, Verdict>> judgments);

/// M x M subshot similarity matrices used by the dense comparison.
Eigen::MatrixXd text_similarity_matrix(const VideoRecord& video, Metric metric = Metric::RougeSU,
                                       const TextProcessor& tp = TextProcessor::standard());
Eigen::MatrixXd pixel_similarity_matrix(const SubshotFeatures& features);

struct TripleJudgment {
    std::size_t ref = 0;
    std::size_t x = 0;
    std::size_t y = 0;
    PairJudgment vset;
    PairJudgment pb;
    CaseLabel label = CaseLabel::BothZero;
};

/// Every (ref, x, y) with x < y and all three distinct, in lexicographic order.
std::vector<TripleJudgment> dense_subshot_judgments(const Eigen::MatrixXd& text_similarity,
                                                    const Eigen::MatrixXd& pixel_similarity);

using CaseCounts = std::array<std::size_t, 4>;
CaseCounts count_cases(std::span<const TripleJudgment> judgments);

std::string to_string(Verdict v);
std::string to_string(CaseLabel c);
Verdict parse_verdict(const std::string& s);

}  // namespace videoset
