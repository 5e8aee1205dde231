#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>
#include <fstream>
#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles/oracles.hpp"
#include "support.hpp"
#include "videoset/analysis.hpp"
#include "videoset/error.hpp"
#include "videoset/evaluator.hpp"
#include "videoset/visual.hpp"

using namespace videoset;
using testing_support::make_gt;
using testing_support::make_video;
using V = std::vector<double>;

namespace {

Verdict mirror(Verdict v) {
    if (v == Verdict::FirstCloser) return Verdict::SecondCloser;
    if (v == Verdict::SecondCloser) return Verdict::FirstCloser;
    return v;
}

}  // namespace

TEST(Judge, Rules) {
    EXPECT_EQ(judge(0.0, 0.0).verdict, Verdict::BothZero);
    EXPECT_EQ(judge(0.3, 0.3).verdict, Verdict::BothEqual);
    EXPECT_EQ(judge(0.3, 0.3 + 1e-10).verdict, Verdict::BothEqual);
    EXPECT_EQ(judge(0.3, 0.0).verdict, Verdict::FirstCloser);
    EXPECT_EQ(judge(0.0, 0.1).verdict, Verdict::SecondCloser);
    EXPECT_EQ(judge(-0.2, -0.2, false).verdict, Verdict::BothEqual);
    EXPECT_EQ(judge(-0.2, -0.5, false).verdict, Verdict::FirstCloser);
    EXPECT_EQ(judge(0.0, 0.0, false).verdict, Verdict::BothEqual);
    const auto j = judge(0.4, 0.1);
    EXPECT_EQ(j.first_score, 0.4);
    EXPECT_EQ(j.second_score, 0.1);
}

TEST(Spearman, Examples) {
    EXPECT_DOUBLE_EQ(spearman(V{1, 2, 3}, V{1, 2, 3}), 1.0);
    EXPECT_DOUBLE_EQ(spearman(V{1, 2, 3}, V{3, 2, 1}), -1.0);
    EXPECT_NEAR(spearman(V{1, 2, 3, 4}, V{1, 3, 2, 4}), 0.8, 1e-15);
}

TEST(Spearman, TiesUseAverageRanks) {
    EXPECT_EQ(average_ranks(V{10, 20, 20, 5}), (Eigen::Vector4d(2, 3.5, 3.5, 1)));
    // Reference values from an independent statistics package.
    EXPECT_NEAR(spearman(V{1, 2, 2, 3, 5}, V{2, 1, 4, 4, 3}), 0.3947368421052632, 1e-12);
    EXPECT_NEAR(spearman(V{0.3, 0.1, 0.1, 0.9, 0.5, 0.5, 0.5}, V{7, 3, 4, 4, 1, 9, 2}), -0.047203432003085063, 1e-12);
}

TEST(Spearman, Errors) {
    EXPECT_THROW(spearman(V{1, 2}, V{1, 2, 3}), ArgumentError);
    EXPECT_THROW(spearman(V{1}, V{1}), ArgumentError);
    EXPECT_THROW(spearman(V{2, 2, 2}, V{1, 2, 3}), ArgumentError);
}

TEST(SpearmanProperty, ClosedFormAndMonotoneInvariance) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 9;
        V x(n), y(n);
        std::iota(x.begin(), x.end(), 1.0);
        std::iota(y.begin(), y.end(), 1.0);
        std::shuffle(x.begin(), x.end(), rng);
        std::shuffle(y.begin(), y.end(), rng);
        const double rho = spearman(x, y);
        EXPECT_NEAR(rho, oracle::spearman_closed_form(x, y), 1e-12);
        V tx(n);
        std::transform(x.begin(), x.end(), tx.begin(), [](double v) { return std::log(v) + v * v * v; });
        EXPECT_NEAR(spearman(tx, y), rho, 1e-12);
        EXPECT_GE(rho, -1.0);
        EXPECT_LE(rho, 1.0);
    }
}

TEST(SummaryPair, Examples) {
    const auto v = make_video({"I walked my dog.", "I drove my car.", "I read a book.", "I ate lunch."});
    const std::vector<GroundTruthSummary> gts{make_gt("a", {"I walked my dog."}, {1})};
    EXPECT_EQ(judge_summary_pair({"test", {0}}, {"test", {1}}, v, gts).verdict, Verdict::FirstCloser);
    EXPECT_EQ(judge_summary_pair({"test", {2}}, {"test", {0}}, v, gts).verdict, Verdict::SecondCloser);
    EXPECT_EQ(judge_summary_pair({"test", {0}}, {"test", {0}}, v, gts).verdict, Verdict::BothEqual);
    EXPECT_EQ(judge_summary_pair({"test", {1}}, {"test", {2}}, v, gts).verdict, Verdict::BothZero);
    EXPECT_THROW(judge_summary_pair({"test", {1}}, {"test", {1, 2}}, v, gts), ArgumentError);
}

TEST(SummaryPair, RandomizedAgreesWithScores) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::string> notes(8);
        for (auto& s : notes) s = testing_support::random_sentence(rng, 8, 5);
        const auto v = make_video(notes);
        std::vector<GroundTruthSummary> gts{make_gt("a", {testing_support::random_sentence(rng, 8, 6),
                                                         testing_support::random_sentence(rng, 8, 6)},
                                                    {2, 1})};
        const auto pairs = sample_summary_pairs(8, 2, 1, trial);
        const auto& [a, b] = pairs[0];
        const auto j = judge_summary_pair(a, b, v, gts);
        const double sa = score_summary(a, v, gts).score, sb = score_summary(b, v, gts).score;
        Verdict want;
        if (sa <= 0.0 && sb <= 0.0)
            want = Verdict::BothZero;
        else if (std::abs(sa - sb) <= 1e-9)
            want = Verdict::BothEqual;
        else
            want = sa > sb ? Verdict::FirstCloser : Verdict::SecondCloser;
        EXPECT_EQ(j.verdict, want);
        EXPECT_EQ(judge_summary_pair(b, a, v, gts).verdict, mirror(j.verdict));
    }
}

TEST(SummaryPair, PixelUsesNegatedDistance) {
    std::mt19937_64 rng(2);
    const auto f = testing_support::random_features(rng, 5, 3);
    const SummarySelection gt{"random", {0, 1}};
    const auto j = judge_summary_pair_pixel({"random", {0}}, {"random", {4}}, gt, f);
    EXPECT_EQ(j.first_score, 0.0);
    EXPECT_EQ(j.second_score, -pixel_summary_distance({"random", {4}}, gt, f));
    EXPECT_EQ(j.verdict, Verdict::FirstCloser);
}

TEST(SubshotPair, Examples) {
    const auto v = make_video({"dog park", "car road", "tree house", "dog park", "coffee book"});
    EXPECT_EQ(judge_subshot_pair(1, 2, 0, v).verdict, Verdict::BothZero);
    EXPECT_EQ(judge_subshot_pair(0, 3, 1, v).verdict, Verdict::BothZero);
    EXPECT_EQ(judge_subshot_pair(0, 1, 3, v).verdict, Verdict::FirstCloser);
    EXPECT_EQ(judge_subshot_pair(1, 0, 3, v).verdict, Verdict::SecondCloser);
    const auto w = make_video({"dog park", "dog beach", "dog beach"});
    EXPECT_EQ(judge_subshot_pair(1, 2, 0, w).verdict, Verdict::BothEqual);
    EXPECT_THROW(judge_subshot_pair(0, 0, 1, v), ArgumentError);
    EXPECT_THROW(judge_subshot_pair(0, 1, 5, v), ArgumentError);
}

TEST(SubshotPairProperty, Antisymmetric) {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::string> notes(5);
        for (auto& s : notes) s = testing_support::random_sentence(rng, 6, 4);
        const auto v = make_video(notes);
        const auto f = testing_support::random_features(rng, 5, 2);
        for (std::size_t r = 0; r < 5; ++r)
            for (std::size_t x = 0; x < 5; ++x)
                for (std::size_t y = 0; y < 5; ++y) {
                    if (x == y || x == r || y == r) continue;
                    EXPECT_EQ(judge_subshot_pair(y, x, r, v).verdict, mirror(judge_subshot_pair(x, y, r, v).verdict));
                    EXPECT_EQ(judge_subshot_pair_pixel(y, x, r, f).verdict,
                              mirror(judge_subshot_pair_pixel(x, y, r, f).verdict));
                    EXPECT_NE(judge_subshot_pair_pixel(x, y, r, f).verdict, Verdict::BothZero);
                }
    }
}

TEST(ClassifyCase, TotalOverVerdictPairs) {
    const Verdict all[] = {Verdict::BothZero, Verdict::BothEqual, Verdict::FirstCloser, Verdict::SecondCloser};
    for (auto a : all)
        for (auto b : all) {
            const auto c = classify_case({a, 0, 0}, {b, 0, 0});
            if (a == Verdict::BothZero)
                EXPECT_EQ(c, CaseLabel::BothZero);
            else if (a == Verdict::BothEqual)
                EXPECT_EQ(c, CaseLabel::BothEqual);
            else
                EXPECT_EQ(c, a == b ? CaseLabel::InequalAgreesPB : CaseLabel::InequalDisagreesPB);
        }
}

TEST(SamplePairs, DeterministicAndValid) {
    const auto a = sample_summary_pairs(50, 10, 20, 7);
    EXPECT_EQ(a, sample_summary_pairs(50, 10, 20, 7));
    EXPECT_NE(a, sample_summary_pairs(50, 10, 20, 8));
    for (const auto& [x, y] : a) {
        EXPECT_NO_THROW(validate(x, 50));
        EXPECT_NO_THROW(validate(y, 50));
        EXPECT_EQ(x.size(), 10u);
    }
    for (const auto& [x, y] : sample_summary_pairs(6, 6, 3, 1)) {
        EXPECT_EQ(x.indices, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5}));
        EXPECT_EQ(y.indices, x.indices);
    }
    EXPECT_THROW(sample_summary_pairs(3, 4, 1, 0), ArgumentError);
}

TEST(SamplePairs, MatchesCommittedGoldenList) {
    std::ifstream in(testing_support::data_path("golden_summary_pairs.json"));
    ASSERT_TRUE(in);
    const auto golden = nlohmann::json::parse(in);
    const auto pairs = sample_summary_pairs(golden["m"], golden["n"], golden["pairs"].size(), golden["seed"]);
    ASSERT_EQ(pairs.size(), 100u);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        EXPECT_EQ(pairs[i].first.indices, golden["pairs"][i]["first"].get<std::vector<std::size_t>>());
        EXPECT_EQ(pairs[i].second.indices, golden["pairs"][i]["second"].get<std::vector<std::size_t>>());
    }
}

TEST(Agreement, Rates) {
    std::vector<std::pair<PairJudgment, Verdict>> items;
    for (int i = 0; i < 100; ++i)
        items.push_back({PairJudgment{Verdict::FirstCloser, 1, 0}, i < 61 ? Verdict::FirstCloser : Verdict::SecondCloser});
    EXPECT_DOUBLE_EQ(agreement_rate(items), 0.61);
    items.resize(61);
    EXPECT_EQ(agreement_rate(items), 1.0);
    items.assign(3, {PairJudgment{Verdict::BothZero, 0, 0}, Verdict::BothEqual});
    EXPECT_EQ(agreement_rate(items), 0.0);
    EXPECT_THROW(agreement_rate({}), ArgumentError);
}

TEST(Dense, CanonicalOrderAndCounts) {
    const auto v = make_video({"dog park", "dog beach", "car road", "dog park"});
    std::mt19937_64 rng(3);
    const auto f = testing_support::random_features(rng, 4, 2);
    const auto judgments = dense_subshot_judgments(text_similarity_matrix(v), pixel_similarity_matrix(f));
    ASSERT_EQ(judgments.size(), 4u * 3u);
    EXPECT_TRUE(std::is_sorted(judgments.begin(), judgments.end(), [](const auto& a, const auto& b) {
        return std::tie(a.ref, a.x, a.y) < std::tie(b.ref, b.x, b.y);
    }));
    std::size_t total = 0;
    for (auto c : count_cases(judgments)) total += c;
    EXPECT_EQ(total, judgments.size());
    for (const auto& t : judgments) {
        EXPECT_EQ(t.vset.verdict, judge_subshot_pair(t.x, t.y, t.ref, v).verdict);
        EXPECT_EQ(t.pb.verdict, judge_subshot_pair_pixel(t.x, t.y, t.ref, f).verdict);
        EXPECT_EQ(t.label, classify_case(t.vset, t.pb));
    }
    EXPECT_THROW(dense_subshot_judgments(Eigen::MatrixXd::Zero(3, 3), Eigen::MatrixXd::Zero(4, 4)), ArgumentError);
}

TEST(Names, RoundTrip) {
    for (auto v : {Verdict::BothZero, Verdict::BothEqual, Verdict::FirstCloser, Verdict::SecondCloser})
        EXPECT_EQ(parse_verdict(to_string(v)), v);
    EXPECT_EQ(to_string(CaseLabel::InequalAgreesPB), "inequal_agrees_pb");
    EXPECT_THROW(parse_verdict("closer"), ParseError);
}
