#include <algorithm>
#include <array>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "support.hpp"
#include "videoset/error.hpp"
#include "videoset/summarize.hpp"
#include "videoset/visual.hpp"

using namespace videoset;
using Indices = std::vector<std::size_t>;

namespace {

// One subshot per column of `cols`, each holding that single frame.
SubshotFeatures one_frame_each(const Eigen::MatrixXd& cols) {
    SubshotFeatures f{"f", 1, {}};
    f.bins_per_channel = static_cast<int>(cols.rows() / 3);
    for (Eigen::Index c = 0; c < cols.cols(); ++c) f.subshots.push_back(cols.col(c));
    return f;
}

Eigen::VectorXd one_hot(Eigen::Index dims, Eigen::Index at) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dims);
    v(at) = 1.0;
    return v;
}

void expect_valid(const SummarySelection& s, std::size_t n, std::size_t m) {
    ASSERT_EQ(s.indices.size(), n);
    EXPECT_TRUE(std::is_sorted(s.indices.begin(), s.indices.end()));
    EXPECT_EQ(std::adjacent_find(s.indices.begin(), s.indices.end()), s.indices.end());
    EXPECT_LT(s.indices.back(), m);
}

}  // namespace

TEST(Uniform, Examples) {
    EXPECT_EQ(uniform_sample(10, 5).indices, (Indices{0, 2, 4, 6, 8}));
    EXPECT_EQ(uniform_sample(7, 3).indices, (Indices{0, 2, 4}));
    EXPECT_EQ(uniform_sample(4, 4).indices, (Indices{0, 1, 2, 3}));
    EXPECT_THROW(uniform_sample(3, 4), ArgumentError);
    EXPECT_THROW(uniform_sample(3, 0), ArgumentError);
}

TEST(Uniform, AlwaysValid) {
    for (std::size_t m = 1; m < 40; ++m)
        for (std::size_t n = 1; n <= m; ++n) expect_valid(uniform_sample(m, n), n, m);
}

TEST(Cluster, AllDistinctFramesAreCenters) {
    Eigen::MatrixXd cols(6, 4);
    cols.col(0) = one_hot(6, 0);
    cols.col(1) = one_hot(6, 2);
    cols.col(2) = one_hot(6, 4);
    cols.col(3) << 0.5, 0, 0, 0.5, 0, 0;
    EXPECT_EQ(histogram_cluster(one_frame_each(cols), 4, 1).indices, (Indices{0, 1, 2, 3}));
}

TEST(Cluster, TwoGroupsGiveOneSubshotEach) {
    SubshotFeatures f{"f", 1, {}};
    const auto red = one_hot(3, 0), blue = one_hot(3, 2);
    f.subshots.push_back((Eigen::MatrixXd(3, 2) << red, red).finished());
    f.subshots.push_back(red);
    f.subshots.push_back((Eigen::MatrixXd(3, 3) << blue, blue, blue).finished());
    f.subshots.push_back(blue);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto r = histogram_cluster_detailed(f, 2, seed);
        ASSERT_EQ(r.selection.indices.size(), 2u);
        EXPECT_LT(r.selection.indices[0], 2u);
        EXPECT_GE(r.selection.indices[1], 2u);
        EXPECT_EQ(r.objective_history.back(), 0.0);
    }
}

TEST(Cluster, SingleClusterPicksFrameNearestMean) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = testing_support::random_features(rng, 6, 3);
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(6);
        std::size_t frames = 0;
        for (const auto& m : f.subshots) {
            mean += m.rowwise().sum();
            frames += static_cast<std::size_t>(m.cols());
        }
        mean /= double(frames);
        std::size_t want = 0;
        double best = 1e300;
        for (std::size_t s = 0; s < f.subshots.size(); ++s)
            for (Eigen::Index c = 0; c < f.subshots[s].cols(); ++c) {
                const double d = oracle::chi2(f.subshots[s].col(c), mean);
                if (d < best) {
                    best = d;
                    want = s;
                }
            }
        EXPECT_EQ(histogram_cluster(f, 1, trial).indices, Indices{want});
    }
}

TEST(Cluster, Errors) {
    Eigen::MatrixXd cols(3, 2);
    cols << 1, 0, 0, 1, 0, 0;
    EXPECT_THROW(histogram_cluster(one_frame_each(cols), 3, 0), ArgumentError);
    EXPECT_THROW(histogram_cluster(one_frame_each(cols), 0, 0), ArgumentError);
}

TEST(ClusterProperty, ObjectiveNeverIncreasesAndOutputValid) {
    std::mt19937_64 rng(99);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto f = testing_support::random_features(rng, 12, 4, 4);
        const std::size_t n = 1 + seed % 6;
        const auto r = histogram_cluster_detailed(f, n, seed);
        expect_valid(r.selection, n, 12);
        for (std::size_t i = 1; i < r.objective_history.size(); ++i)
            EXPECT_LE(r.objective_history[i], r.objective_history[i - 1]) << "seed " << seed << " step " << i;
        EXPECT_EQ(histogram_cluster(f, n, seed), r.selection);
    }
}

TEST(Mmr, FirstPickBreaksTieByLowestIndex) {
    Eigen::MatrixXd cols(3, 3);
    cols.col(0) = one_hot(3, 0);
    cols.col(1) = one_hot(3, 0);
    cols.col(2) = one_hot(3, 1);
    const auto r = video_mmr_detailed(one_frame_each(cols), {0.5, 1});
    EXPECT_EQ(r.keyframes, Indices{0});
    EXPECT_EQ(r.selection.indices, Indices{0});
}

TEST(Mmr, ExhaustionReturnsEverySubshot) {
    std::mt19937_64 rng(4);
    const auto f = testing_support::random_features(rng, 7, 3);
    EXPECT_EQ(video_mmr(f, {0.5, 7}).indices, (Indices{0, 1, 2, 3, 4, 5, 6}));
}

TEST(Mmr, Errors) {
    std::mt19937_64 rng(4);
    const auto f = testing_support::random_features(rng, 3, 2);
    EXPECT_THROW(video_mmr(f, {1.5, 1}), ArgumentError);
    EXPECT_THROW(video_mmr(f, {0.5, 4}), ArgumentError);
    EXPECT_THROW(video_mmr(f, {0.5, 0}), ArgumentError);
}

TEST(Mmr, EveryStepMatchesBruteForce) {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t m = 2 + rng() % 10;
        const auto f = testing_support::random_features(rng, m, 3);
        Eigen::MatrixXd all(f.subshots[0].rows(), Eigen::Index(f.frame_count()));
        Eigen::Index col = 0;
        for (const auto& s : f.subshots) {
            all.middleCols(col, s.cols()) = s;
            col += s.cols();
        }
        const double lambda = std::array<double, 3>{0.0, 0.5, 1.0}[trial % 3];
        const std::size_t n = 1 + rng() % std::min<std::size_t>(m, 5);
        const auto r = video_mmr_detailed(f, {lambda, n});
        std::vector<std::size_t> picked;
        for (auto k : r.keyframes) {
            EXPECT_EQ(k, oracle::mmr_step(all, picked, lambda, kMmrTieTolerance));
            picked.push_back(k);
        }
        expect_valid(r.selection, n, m);
    }
}

TEST(GreedyBow, WorkedExample) {
    const auto v = testing_support::make_video(
        {"I walked my dog", "I went shopping at the mall", "I walked in the park"});
    const auto g = testing_support::make_gt("a", {"I walked my dog in the park.", "I went shopping."}, {1, 2});
    EXPECT_EQ(greedy_bow(v, g, 2).indices, (Indices{0, 1}));
}

TEST(GreedyBow, WholeBagInOneSubshot) {
    const auto v = testing_support::make_video({"car road", "dog park beach", "tree house"});
    const auto g = testing_support::make_gt("a", {"The dog at the beach park."}, {1});
    EXPECT_EQ(greedy_bow(v, g, 1).indices, Indices{1});
}

TEST(GreedyBow, DisjointFallsBackToUniform) {
    const auto v = testing_support::make_video({"car", "road", "tree", "house", "door", "table"});
    const auto g = testing_support::make_gt("a", {"dog park"}, {1});
    EXPECT_EQ(greedy_bow(v, g, 3).indices, (Indices{0, 2, 4}));
    // Partial coverage, then uniform over what is left.
    const auto w = testing_support::make_video({"car", "road", "dog", "house", "door", "table"});
    EXPECT_EQ(greedy_bow(w, g, 3).indices, (Indices{0, 2, 3}));
    EXPECT_THROW(greedy_bow(v, g, 7), ArgumentError);
}

TEST(OrderedAssignment, WorkedExample) {
    Eigen::MatrixXd sim(2, 3);
    sim << 0.9, 0.1, 0.2, 0.8, 0.0, 0.7;
    const auto a = ordered_assignment(sim);
    EXPECT_EQ(a.indices, (Indices{0, 2}));
    EXPECT_DOUBLE_EQ(a.total, 1.6);
}

TEST(OrderedAssignment, SingleRowAndTies) {
    Eigen::MatrixXd row(1, 4);
    row << 0.2, 0.5, 0.5, 0.1;
    EXPECT_EQ(ordered_assignment(row).indices, Indices{1});
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(2, 4);
    EXPECT_EQ(ordered_assignment(zero).indices, (Indices{0, 1}));
    EXPECT_THROW(ordered_assignment(Eigen::MatrixXd::Zero(3, 2)), ArgumentError);
}

TEST(OrderedAssignment, MatchesExhaustiveSearch) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> q(0, 4);
    for (int trial = 0; trial < 300; ++trial) {
        const Eigen::Index n = 1 + Eigen::Index(rng() % 4);
        const Eigen::Index m = n + Eigen::Index(rng() % (13 - n));
        Eigen::MatrixXd sim(n, m);
        // Coarse values make ties common.
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < m; ++j) sim(i, j) = q(rng) / 4.0;
        const auto got = ordered_assignment(sim);
        const auto want = oracle::exhaustive_assignment(sim);
        EXPECT_EQ(got.indices, want.indices);
        EXPECT_EQ(got.total, want.total);
    }
}

TEST(SentenceDp, FollowsSentenceOrder) {
    const auto v = testing_support::make_video(
        {"dog park", "car road", "coffee phone", "dog beach", "tree house", "train bike"});
    const auto g = testing_support::make_gt("a", {"I drove my car on the road.", "I walked my dog to the beach.",
                                                  "I rode my bike to the train."},
                                            {1, 2, 3});
    EXPECT_EQ(sentence_dp(v, g, 3).indices, (Indices{1, 3, 5}));
    EXPECT_EQ(sentence_dp(v, g, 1).indices, Indices{1});
    EXPECT_THROW(sentence_dp(v, g, 7), ArgumentError);
}

TEST(SentenceDp, ShortGroundTruthIsFilled) {
    const auto v = testing_support::make_video({"a car", "a dog", "a tree", "a road"});
    const auto g = testing_support::make_gt("a", {"dog"}, {1});
    const auto s = sentence_dp(v, g, 3);
    expect_valid(s, 3, 4);
    EXPECT_TRUE(std::count(s.indices.begin(), s.indices.end(), 1u));
}

TEST(SentenceDpProperty, BeatsRandomAssignments) {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::string> notes(8);
        for (auto& s : notes) s = testing_support::random_sentence(rng, 10, 5);
        std::vector<std::string> sents(3);
        for (auto& s : sents) s = testing_support::random_sentence(rng, 10, 5);
        const auto v = testing_support::make_video(notes);
        const auto sim = sentence_similarity(v, sents);
        const double best = ordered_assignment(sim).total;
        for (int k = 0; k < 20; ++k) {
            Indices pick(8);
            std::iota(pick.begin(), pick.end(), 0);
            std::shuffle(pick.begin(), pick.end(), rng);
            pick.resize(3);
            std::sort(pick.begin(), pick.end());
            double t = 0;
            for (int j = 0; j < 3; ++j) t += sim(j, Eigen::Index(pick[std::size_t(j)]));
            EXPECT_GE(best + 1e-12, t);
        }
    }
}
