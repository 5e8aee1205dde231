#include "videoset/summarize.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "videoset/error.hpp"
#include "videoset/evaluator.hpp"
#include "videoset/random.hpp"
#include "videoset/rouge.hpp"
#include "videoset/visual.hpp"

namespace videoset {

namespace {

// All frames as columns, plus the subshot each one belongs to.
struct FrameTable {
    Eigen::MatrixXd frames;
    std::vector<std::size_t> subshot;
};

FrameTable flatten(const SubshotFeatures& features) {
    FrameTable t;
    const auto total = static_cast<Eigen::Index>(features.frame_count());
    const auto dims = features.subshots.empty() ? Eigen::Index(0) : features.subshots.front().rows();
    t.frames.resize(dims, total);
    Eigen::Index col = 0;
    for (std::size_t s = 0; s < features.subshots.size(); ++s) {
        const auto& m = features.subshots[s];
        t.frames.middleCols(col, m.cols()) = m;
        col += m.cols();
        t.subshot.insert(t.subshot.end(), static_cast<std::size_t>(m.cols()), s);
    }
    return t;
}

// Fills `count` slots by uniform sampling over subshots not yet chosen.
void uniform_fill(std::set<std::size_t>& chosen, std::size_t m, std::size_t count) {
    if (count == 0) return;
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < m; ++i)
        if (!chosen.count(i)) free.push_back(i);
    for (auto pos : uniform_sample(free.size(), count).indices) chosen.insert(free[pos]);
}

void check_size(std::size_t n, std::size_t m, const char* who) {
    if (n == 0) throw ArgumentError(std::string(who) + ": n must be at least 1");
    if (n > m)
        throw ArgumentError(std::string(who) + ": n = " + std::to_string(n) + " exceeds subshot count " +
                            std::to_string(m));
}

}  // namespace

SummarySelection uniform_sample(std::size_t m, std::size_t n) {
    check_size(n, m, "uniform_sample");
    SummarySelection s;
    s.indices.reserve(n);
    for (std::size_t i = 0; i < n; ++i) s.indices.push_back(i * m / n);
    return s;
}

// ---- histogram clustering ------------------------------------------------

namespace {

Eigen::MatrixXd seed_centroids(const Eigen::MatrixXd& x, std::size_t k, SplitMix64& rng) {
    const auto f = static_cast<std::size_t>(x.cols());
    Eigen::MatrixXd c(x.rows(), static_cast<Eigen::Index>(k));
    std::vector<bool> is_center(f, false);
    std::vector<double> nearest(f, std::numeric_limits<double>::infinity());

    std::size_t pick = static_cast<std::size_t>(rng.next_below(f));
    for (std::size_t j = 0; j < k; ++j) {
        if (j > 0) {
            const double total = std::accumulate(nearest.begin(), nearest.end(), 0.0);
            if (total > 0.0) {
                // Draw proportionally to the chi-square distance to the nearest center.
                const double target = rng.next_unit() * total;
                double cum = 0.0;
                pick = f;
                std::size_t last_positive = f;
                for (std::size_t i = 0; i < f; ++i) {
                    if (nearest[i] <= 0.0) continue;
                    last_positive = i;
                    cum += nearest[i];
                    if (cum > target) {
                        pick = i;
                        break;
                    }
                }
                if (pick == f) pick = last_positive;
            } else {
                pick = static_cast<std::size_t>(std::find(is_center.begin(), is_center.end(), false) - is_center.begin());
            }
        }
        is_center[pick] = true;
        c.col(static_cast<Eigen::Index>(j)) = x.col(static_cast<Eigen::Index>(pick));
        for (std::size_t i = 0; i < f; ++i)
            nearest[i] = std::min(nearest[i], chi_square(x.col(static_cast<Eigen::Index>(i)), c.col(static_cast<Eigen::Index>(j))));
        nearest[pick] = 0.0;
    }
    return c;
}

// Nearest centroid per frame (lowest index on ties) and its distance.
void assign(const Eigen::MatrixXd& x, const Eigen::MatrixXd& c, std::vector<std::size_t>& label,
            std::vector<double>& dist) {
    for (Eigen::Index i = 0; i < x.cols(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (Eigen::Index j = 0; j < c.cols(); ++j) {
            const double d = chi_square(x.col(i), c.col(j));
            if (d < best) {
                best = d;
                arg = static_cast<std::size_t>(j);
            }
        }
        label[static_cast<std::size_t>(i)] = arg;
        dist[static_cast<std::size_t>(i)] = best;
    }
}

}  // namespace

ClusterResult histogram_cluster_detailed(const SubshotFeatures& features, std::size_t n, std::uint64_t seed) {
    const std::size_t m = features.subshots.size();
    check_size(n, m, "histogram_cluster");
    const FrameTable table = flatten(features);
    const auto& x = table.frames;
    const auto f = static_cast<std::size_t>(x.cols());
    if (f < n) throw ArgumentError("histogram_cluster: " + std::to_string(f) + " frames cannot form " + std::to_string(n) + " clusters");

    SplitMix64 rng(seed);
    Eigen::MatrixXd c = seed_centroids(x, n, rng);
    std::vector<std::size_t> label(f), previous;
    std::vector<double> dist(f);
    ClusterResult result;

    for (int iter = 0; iter < kMaxLloydIterations; ++iter) {
        assign(x, c, label, dist);

        // Reseed empty clusters with the frame farthest from its centroid,
        // taken from a cluster that can spare it.
        std::vector<std::size_t> sizes(n, 0);
        for (auto l : label) ++sizes[l];
        for (std::size_t k = 0; k < n; ++k) {
            if (sizes[k] != 0) continue;
            std::size_t far = f;
            for (std::size_t i = 0; i < f; ++i)
                if (sizes[label[i]] > 1 && (far == f || dist[i] > dist[far])) far = i;
            --sizes[label[far]];
            label[far] = k;
            dist[far] = 0.0;
            sizes[k] = 1;
            c.col(static_cast<Eigen::Index>(k)) = x.col(static_cast<Eigen::Index>(far));
        }

        result.objective_history.push_back(std::accumulate(dist.begin(), dist.end(), 0.0));
        result.iterations = static_cast<std::size_t>(iter) + 1;
        if (label == previous) break;
        previous = label;

        // The mean is not the chi-square minimizer, so a cluster only moves to
        // its mean when that lowers its members' cost.
        Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(x.rows(), static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < f; ++i) mean.col(static_cast<Eigen::Index>(label[i])) += x.col(static_cast<Eigen::Index>(i));
        for (std::size_t k = 0; k < n; ++k) mean.col(static_cast<Eigen::Index>(k)) /= static_cast<double>(sizes[k]);
        std::vector<double> old_cost(n, 0.0), new_cost(n, 0.0);
        for (std::size_t i = 0; i < f; ++i) {
            old_cost[label[i]] += dist[i];
            new_cost[label[i]] += chi_square(x.col(static_cast<Eigen::Index>(i)), mean.col(static_cast<Eigen::Index>(label[i])));
        }
        for (std::size_t k = 0; k < n; ++k)
            if (new_cost[k] < old_cost[k]) c.col(static_cast<Eigen::Index>(k)) = mean.col(static_cast<Eigen::Index>(k));
    }

    // For each cluster, the nearest frame whose subshot is still unused.
    std::set<std::size_t> chosen;
    std::vector<std::size_t> order(f);
    std::vector<double> to_center(f);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < f; ++i)
            to_center[i] = chi_square(x.col(static_cast<Eigen::Index>(i)), c.col(static_cast<Eigen::Index>(k)));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return to_center[a] < to_center[b]; });
        for (auto i : order) {
            if (chosen.insert(table.subshot[i]).second) break;
        }
    }
    uniform_fill(chosen, m, n - chosen.size());

    result.selection.video_id = features.video_id;
    result.selection.indices.assign(chosen.begin(), chosen.end());
    return result;
}

SummarySelection histogram_cluster(const SubshotFeatures& features, std::size_t n, std::uint64_t seed) {
    return histogram_cluster_detailed(features, n, seed).selection;
}

// ---- Video-MMR -----------------------------------------------------------

MmrResult video_mmr_detailed(const SubshotFeatures& features, const MmrParams& params) {
    if (!(params.lambda >= 0.0 && params.lambda <= 1.0)) throw ArgumentError("video_mmr: lambda must lie in [0, 1]");
    const std::size_t m = features.subshots.size();
    check_size(params.n, m, "video_mmr");
    const FrameTable table = flatten(features);
    const auto& x = table.frames;
    const auto f = static_cast<std::size_t>(x.cols());
    if (f < params.n) throw ArgumentError("video_mmr: fewer frames than requested subshots");

    // Running sum of distances from each frame to every unselected frame.
    std::vector<double> relevance_sum(f, 0.0);
    for (std::size_t i = 0; i < f; ++i) {
        for (std::size_t j = i + 1; j < f; ++j) {
            const double d = chi_square(x.col(static_cast<Eigen::Index>(i)), x.col(static_cast<Eigen::Index>(j)));
            relevance_sum[i] += d;
            relevance_sum[j] += d;
        }
    }
    std::vector<double> redundancy(f, std::numeric_limits<double>::infinity());
    std::vector<bool> selected(f, false);
    std::size_t remaining = f;

    MmrResult result;
    std::set<std::size_t> subshots;
    while (subshots.size() < params.n) {
        if (remaining == 0) throw ArgumentError("video_mmr: cannot reach " + std::to_string(params.n) + " distinct subshots");
        const bool first = result.keyframes.empty();
        std::size_t best = f;
        double best_score = 0.0;
        for (std::size_t i = 0; i < f; ++i) {
            if (selected[i]) continue;
            const double rel = remaining > 1 ? relevance_sum[i] / static_cast<double>(remaining - 1) : 0.0;
            double score = params.lambda * rel;
            if (!first) score -= (1.0 - params.lambda) * redundancy[i];
            if (best == f || score < best_score - kMmrTieTolerance) {
                best = i;
                best_score = score;
            }
        }
        selected[best] = true;
        --remaining;
        result.keyframes.push_back(best);
        subshots.insert(table.subshot[best]);
        const auto col = x.col(static_cast<Eigen::Index>(best));
        for (std::size_t i = 0; i < f; ++i) {
            if (selected[i]) continue;
            const double d = chi_square(x.col(static_cast<Eigen::Index>(i)), col);
            relevance_sum[i] -= d;
            redundancy[i] = std::min(redundancy[i], d);
        }
    }
    result.selection.video_id = features.video_id;
    result.selection.indices.assign(subshots.begin(), subshots.end());
    return result;
}

SummarySelection video_mmr(const SubshotFeatures& features, const MmrParams& params) {
    return video_mmr_detailed(features, params).selection;
}

// ---- text-driven baselines -----------------------------------------------

SummarySelection greedy_bow(const VideoRecord& video, const GroundTruthSummary& gt, std::size_t n,
                            const TextProcessor& tp) {
    const std::size_t m = video.size();
    check_size(n, m, "greedy_bow");

    UnitCounts bag;
    for (const auto& s : length_adjust(gt, n))
        for (auto& t : tp.normalize(s)) ++bag[t];

    std::vector<UnitCounts> words(m);
    for (std::size_t i = 0; i < m; ++i)
        for (auto& t : tp.normalize(video.subshots[i].annotation)) ++words[i][t];

    std::set<std::size_t> chosen;
    while (chosen.size() < n) {
        std::size_t best = m;
        std::size_t best_gain = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (chosen.count(i)) continue;
            const std::size_t gain = count_matches(words[i], bag);
            if (gain > best_gain) {
                best = i;
                best_gain = gain;
            }
        }
        if (best_gain == 0) {
            uniform_fill(chosen, m, n - chosen.size());
            break;
        }
        chosen.insert(best);
        for (const auto& [w, count] : words[best]) {
            auto it = bag.find(w);
            if (it == bag.end()) continue;
            it->second -= std::min(it->second, count);
            if (it->second == 0) bag.erase(it);
        }
    }
    return SummarySelection{video.video_id, std::vector<std::size_t>(chosen.begin(), chosen.end())};
}

OrderedAssignment ordered_assignment(const Eigen::MatrixXd& sim) {
    const auto n = sim.rows();
    const auto m = sim.cols();
    if (n == 0) throw ArgumentError("ordered_assignment: no rows");
    if (n > m) throw ArgumentError("ordered_assignment: more rows than columns, no strictly increasing assignment exists");

    const double neg_inf = -std::numeric_limits<double>::infinity();
    // best(j, i): optimal total of rows j..n-1 with row j placed at column i.
    // suffix(j, i): max over i' >= i of best(j, i').
    Eigen::MatrixXd best = Eigen::MatrixXd::Constant(n, m, neg_inf);
    Eigen::MatrixXd suffix = Eigen::MatrixXd::Constant(n, m + 1, neg_inf);
    for (Eigen::Index j = n - 1; j >= 0; --j) {
        const Eigen::Index lo = j;
        const Eigen::Index hi = m - n + j;  // inclusive
        for (Eigen::Index i = lo; i <= hi; ++i)
            best(j, i) = j == n - 1 ? sim(j, i) : sim(j, i) + suffix(j + 1, i + 1);
        for (Eigen::Index i = m - 1; i >= 0; --i) suffix(j, i) = std::max(best(j, i), suffix(j, i + 1));
    }

    OrderedAssignment out;
    Eigen::Index prev = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double target = suffix(j, prev + 1);
        Eigen::Index i = prev + 1;
        while (best(j, i) != target) ++i;
        out.indices.push_back(static_cast<std::size_t>(i));
        if (j == 0) out.total = target;
        prev = i;
    }
    return out;
}

Eigen::MatrixXd sentence_similarity(const VideoRecord& video, const std::vector<std::string>& sentences,
                                    const TextProcessor& tp) {
    const auto n = static_cast<Eigen::Index>(sentences.size());
    const auto m = static_cast<Eigen::Index>(video.size());
    std::vector<UnitCounts> annot(video.size());
    for (std::size_t i = 0; i < video.size(); ++i) annot[i] = su_units({video.subshots[i].annotation}, tp);
    Eigen::MatrixXd sim(n, m);
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto ref = su_units({sentences[static_cast<std::size_t>(j)]}, tp);
        const auto ref_total = total_units(ref);
        for (Eigen::Index i = 0; i < m; ++i) {
            const auto& cand = annot[static_cast<std::size_t>(i)];
            sim(j, i) = RougeScore::from_counts(count_matches(cand, ref), total_units(cand), ref_total).f_measure;
        }
    }
    return sim;
}

SummarySelection sentence_dp(const VideoRecord& video, const GroundTruthSummary& gt, std::size_t n,
                             const TextProcessor& tp) {
    check_size(n, video.size(), "sentence_dp");
    const auto sentences = length_adjust(gt, n);
    const auto assignment = ordered_assignment(sentence_similarity(video, sentences, tp));
    // A ground truth shorter than n leaves slots over; they are filled uniformly.
    std::set<std::size_t> chosen(assignment.indices.begin(), assignment.indices.end());
    uniform_fill(chosen, video.size(), n - chosen.size());
    return SummarySelection{video.video_id, std::vector<std::size_t>(chosen.begin(), chosen.end())};
}

}  // namespace videoset
