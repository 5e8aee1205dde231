#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "videoset/corpus.hpp"
#include "videoset/textproc.hpp"

namespace videoset {

/// {floor(i * m / n) : i = 0..n-1}. Requires 1 <= n <= m.
SummarySelection uniform_sample(std::size_t m, std::size_t n);

struct ClusterResult {
    SummarySelection selection;
    /// Sum of chi-square distances of frames to their assigned centroid,
    /// recorded after every assignment step.
    std::vector<double> objective_history;
    std::size_t iterations = 0;
};

inline constexpr int kMaxLloydIterations = 100;

/// Lloyd clustering of all frames under chi-square with mean centroids and
/// seeded k-means++-style initialization; one subshot per cluster. A cluster
/// keeps its previous centroid when the mean would raise its cost.
ClusterResult histogram_cluster_detailed(const SubshotFeatures& features, std::size_t n, std::uint64_t seed);
SummarySelection histogram_cluster(const SubshotFeatures& features, std::size_t n, std::uint64_t seed);

struct MmrParams {
    double lambda = 0.5;
    std::size_t n = 1;
};

struct MmrResult {
    SummarySelection selection;
    /// Global frame indices in the order they were picked.
    std::vector<std::size_t> keyframes;
};

/// Scores equal within this tolerance are ties, broken by lowest frame index.
inline constexpr double kMmrTieTolerance = 1e-12;

/// Video-MMR keyframe selection. Relevance to the unselected set is the mean
/// chi-square to its other members; redundancy is the minimum chi-square to
/// any selected keyframe (omitted while nothing is selected). Selection
/// continues until n distinct subshots are covered.
MmrResult video_mmr_detailed(const SubshotFeatures& features, const MmrParams& params);
SummarySelection video_mmr(const SubshotFeatures& features, const MmrParams& params);

/// Greedy unigram coverage of the length-adjusted ground truth's bag of words.
SummarySelection greedy_bow(const VideoRecord& video, const GroundTruthSummary& gt, std::size_t n,
                            const TextProcessor& tp = TextProcessor::standard());

struct OrderedAssignment {
    std::vector<std::size_t> indices;
    double total = 0.0;
};

/// Strictly increasing column choice, one per row, maximizing the summed
/// entries. Returns the lexicographically smallest optimum. Requires rows <= cols.
OrderedAssignment ordered_assignment(const Eigen::MatrixXd& similarity);

/// Sentence-level ROUGE-SU F between each length-adjusted ground-truth
/// sentence (rows) and each subshot annotation (columns).
Eigen::MatrixXd sentence_similarity(const VideoRecord& video, const std::vector<std::string>& sentences,
                                    const TextProcessor& tp = TextProcessor::standard());

/// One subshot per top-n ground-truth sentence, preserving sentence order.
SummarySelection sentence_dp(const VideoRecord& video, const GroundTruthSummary& gt, std::size_t n,
                             const TextProcessor& tp = TextProcessor::standard());

}  // namespace videoset
