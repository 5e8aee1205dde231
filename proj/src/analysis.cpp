#include "videoset/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "videoset/error.hpp"
#include "videoset/evaluator.hpp"
#include "videoset/random.hpp"
#include "videoset/visual.hpp"

namespace videoset {

PairJudgment judge(double first, double second, bool zero_floor) {
    PairJudgment j{Verdict::BothZero, first, second};
    if (zero_floor && first <= kZeroThreshold && second <= kZeroThreshold)
        j.verdict = Verdict::BothZero;
    else if (std::abs(first - second) <= kTieTolerance)
        j.verdict = Verdict::BothEqual;
    else
        j.verdict = first > second ? Verdict::FirstCloser : Verdict::SecondCloser;
    return j;
}

Eigen::VectorXd average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    Eigen::VectorXd ranks(static_cast<Eigen::Index>(n));
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks(static_cast<Eigen::Index>(order[k])) = avg;
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw ArgumentError("spearman: length mismatch (" + std::to_string(xs.size()) + " vs " + std::to_string(ys.size()) + ")");
    if (xs.size() < 2) throw ArgumentError("spearman: need at least two items");
    const Eigen::VectorXd rx = average_ranks(xs);
    const Eigen::VectorXd ry = average_ranks(ys);
    const Eigen::VectorXd dx = rx.array() - rx.mean();
    const Eigen::VectorXd dy = ry.array() - ry.mean();
    const double sxx = dx.squaredNorm();
    const double syy = dy.squaredNorm();
    if (sxx == 0.0 || syy == 0.0) throw ArgumentError("spearman: constant input has no ranking");
    return std::clamp(dx.dot(dy) / std::sqrt(sxx * syy), -1.0, 1.0);
}

PairJudgment judge_summary_pair(const SummarySelection& a, const SummarySelection& b, const VideoRecord& video,
                                const std::vector<GroundTruthSummary>& gts, Metric metric, const TextProcessor& tp) {
    if (a.size() != b.size()) throw ArgumentError("judge_summary_pair: summaries differ in size");
    return judge(score_summary(a, video, gts, metric, tp).score, score_summary(b, video, gts, metric, tp).score);
}

PairJudgment judge_summary_pair_pixel(const SummarySelection& a, const SummarySelection& b,
                                      const SummarySelection& gt_subshots, const SubshotFeatures& features) {
    if (a.size() != b.size()) throw ArgumentError("judge_summary_pair: summaries differ in size");
    return judge(-pixel_summary_distance(a, gt_subshots, features), -pixel_summary_distance(b, gt_subshots, features),
                 false);
}

namespace {

void check_triple(std::size_t x, std::size_t y, std::size_t ref, std::size_t m) {
    for (auto i : {x, y, ref})
        if (i >= m) throw ArgumentError("subshot index " + std::to_string(i) + " out of range [0, " + std::to_string(m) + ")");
    if (x == y || x == ref || y == ref) throw ArgumentError("judge_subshot_pair: indices must be distinct");
}

}  // namespace

PairJudgment judge_subshot_pair(std::size_t x, std::size_t y, std::size_t ref, const VideoRecord& video, Metric metric,
                                const TextProcessor& tp) {
    check_triple(x, y, ref, video.size());
    const std::vector<std::string> r{video.subshots[ref].annotation};
    const double sx = text_similarity(metric, {video.subshots[x].annotation}, r, tp).f_measure;
    const double sy = text_similarity(metric, {video.subshots[y].annotation}, r, tp).f_measure;
    return judge(sx, sy);
}

PairJudgment judge_subshot_pair_pixel(std::size_t x, std::size_t y, std::size_t ref, const SubshotFeatures& features) {
    check_triple(x, y, ref, features.subshots.size());
    const auto& r = features.subshots[ref];
    return judge(-subshot_min_distance(features.subshots[x], r), -subshot_min_distance(features.subshots[y], r), false);
}

CaseLabel classify_case(const PairJudgment& vset, const PairJudgment& pb) {
    switch (vset.verdict) {
        case Verdict::BothZero: return CaseLabel::BothZero;
        case Verdict::BothEqual: return CaseLabel::BothEqual;
        case Verdict::FirstCloser:
        case Verdict::SecondCloser:
            return pb.verdict == vset.verdict ? CaseLabel::InequalAgreesPB : CaseLabel::InequalDisagreesPB;
    }
    return CaseLabel::InequalDisagreesPB;
}

std::vector<SummaryPair> sample_summary_pairs(std::size_t m, std::size_t n, std::size_t count, std::uint64_t seed) {
    if (n == 0) throw ArgumentError("sample_summary_pairs: n must be at least 1");
    if (n > m) throw ArgumentError("sample_summary_pairs: n = " + std::to_string(n) + " exceeds m = " + std::to_string(m));
    SplitMix64 rng(seed);
    std::vector<std::size_t> pool(m);
    auto draw = [&] {
        std::iota(pool.begin(), pool.end(), 0);
        for (std::size_t i = 0; i < n; ++i) std::swap(pool[i], pool[i + static_cast<std::size_t>(rng.next_below(m - i))]);
        SummarySelection s;
        s.indices.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
        std::sort(s.indices.begin(), s.indices.end());
        return s;
    };
    std::vector<SummaryPair> pairs;
    pairs.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        auto first = draw();
        auto second = draw();
        pairs.emplace_back(std::move(first), std::move(second));
    }
    return pairs;
}

double agreement_rate(std::span<const std::pair<PairJudgment, Verdict>> judgments) {
    if (judgments.empty()) throw ArgumentError("agreement_rate: no judgments");
    const auto agree = std::count_if(judgments.begin(), judgments.end(),
                                     [](const auto& j) { return j.first.verdict == j.second; });
    return static_cast<double>(agree) / static_cast<double>(judgments.size());
}

Eigen::MatrixXd text_similarity_matrix(const VideoRecord& video, Metric metric, const TextProcessor& tp) {
    const auto m = static_cast<Eigen::Index>(video.size());
    Eigen::MatrixXd s(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index r = 0; r < m; ++r)
            s(i, r) = text_similarity(metric, {video.subshots[static_cast<std::size_t>(i)].annotation},
                                      {video.subshots[static_cast<std::size_t>(r)].annotation}, tp)
                          .f_measure;
    return s;
}

Eigen::MatrixXd pixel_similarity_matrix(const SubshotFeatures& features) { return -subshot_distance_matrix(features); }

std::vector<TripleJudgment> dense_subshot_judgments(const Eigen::MatrixXd& text_sim, const Eigen::MatrixXd& pixel_sim) {
    if (text_sim.rows() != text_sim.cols() || pixel_sim.rows() != pixel_sim.cols() || text_sim.rows() != pixel_sim.rows())
        throw ArgumentError("dense_subshot_judgments: similarity matrices must be square and the same size");
    const auto m = static_cast<std::size_t>(text_sim.rows());
    std::vector<TripleJudgment> out;
    if (m >= 3) out.reserve(m * (m - 1) * (m - 2) / 2);
    for (std::size_t ref = 0; ref < m; ++ref) {
        const auto r = static_cast<Eigen::Index>(ref);
        for (std::size_t x = 0; x < m; ++x) {
            if (x == ref) continue;
            for (std::size_t y = x + 1; y < m; ++y) {
                if (y == ref) continue;
                const auto xi = static_cast<Eigen::Index>(x), yi = static_cast<Eigen::Index>(y);
                TripleJudgment t{ref, x, y, judge(text_sim(xi, r), text_sim(yi, r)),
                                 judge(pixel_sim(xi, r), pixel_sim(yi, r), false), CaseLabel::BothZero};
                t.label = classify_case(t.vset, t.pb);
                out.push_back(t);
            }
        }
    }
    return out;
}

CaseCounts count_cases(std::span<const TripleJudgment> judgments) {
    CaseCounts counts{};
    for (const auto& j : judgments) ++counts[static_cast<std::size_t>(j.label)];
    return counts;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::BothZero: return "both_zero";
        case Verdict::BothEqual: return "both_equal";
        case Verdict::FirstCloser: return "first_closer";
        case Verdict::SecondCloser: return "second_closer";
    }
    return "unknown";
}

std::string to_string(CaseLabel c) {
    switch (c) {
        case CaseLabel::BothZero: return "both_zero";
        case CaseLabel::BothEqual: return "both_equal";
        case CaseLabel::InequalAgreesPB: return "inequal_agrees_pb";
        case CaseLabel::InequalDisagreesPB: return "inequal_disagrees_pb";
    }
    return "unknown";
}

Verdict parse_verdict(const std::string& s) {
    if (s == "both_zero") return Verdict::BothZero;
    if (s == "both_equal") return Verdict::BothEqual;
    if (s == "first_closer") return Verdict::FirstCloser;
    if (s == "second_closer") return Verdict::SecondCloser;
    throw ParseError("unknown verdict '" + s + "'");
}

}  // namespace videoset
