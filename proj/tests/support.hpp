#pragma once

#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "videoset/corpus.hpp"

#ifndef VIDEOSET_TEST_DATA_DIR
#error "VIDEOSET_TEST_DATA_DIR must be defined"
#endif

namespace testing_support {

inline std::string data_path(const std::string& name) { return std::string(VIDEOSET_TEST_DATA_DIR) + "/" + name; }
inline std::string fixture_path(const std::string& name) {
    return std::string(VIDEOSET_FIXTURE_DIR) + "/" + name;
}

// Twenty content words with distinct stems, plus stopwords that the pipeline drops.
inline const std::vector<std::string>& content_words() {
    static const std::vector<std::string> w = {"dog",   "park",  "walked", "car",   "tree",  "lunch", "store",
                                               "ball",  "house", "coffee", "phone", "book",  "chair", "road",
                                               "beach", "train", "bike",  "door",  "table", "window"};
    return w;
}

inline const std::vector<std::string>& filler_words() {
    static const std::vector<std::string> w = {"the", "a", "my", "at", "I", "with", "of"};
    return w;
}

inline std::string random_sentence(std::mt19937_64& rng, std::size_t vocab, std::size_t max_words) {
    std::uniform_int_distribution<std::size_t> len(0, max_words);
    std::uniform_int_distribution<std::size_t> pick(0, vocab - 1);
    std::uniform_int_distribution<std::size_t> filler(0, filler_words().size() - 1);
    std::bernoulli_distribution use_filler(0.25);
    std::string s;
    const auto n = len(rng);
    for (std::size_t i = 0; i < n; ++i) {
        if (!s.empty()) s += ' ';
        s += use_filler(rng) ? filler_words()[filler(rng)] : content_words()[pick(rng)];
    }
    return s + ".";
}

inline std::vector<std::string> random_text(std::mt19937_64& rng, std::size_t max_sentences, std::size_t vocab,
                                            std::size_t max_words) {
    std::uniform_int_distribution<std::size_t> count(0, max_sentences);
    std::vector<std::string> text(count(rng));
    for (auto& s : text) s = random_sentence(rng, vocab, max_words);
    return text;
}

inline Eigen::VectorXd random_histogram(std::mt19937_64& rng, Eigen::Index dims, double sparsity = 0.3) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::VectorXd h(dims);
    for (Eigen::Index i = 0; i < dims; ++i) h(i) = u(rng) < sparsity ? 0.0 : u(rng);
    if (h.sum() == 0.0) h(0) = 1.0;
    return h / h.sum();
}

inline videoset::SubshotFeatures random_features(std::mt19937_64& rng, std::size_t subshots, std::size_t max_frames,
                                                 int bins = 2) {
    std::uniform_int_distribution<std::size_t> frames(1, max_frames);
    videoset::SubshotFeatures f;
    f.video_id = "random";
    f.bins_per_channel = bins;
    for (std::size_t s = 0; s < subshots; ++s) {
        const auto k = static_cast<Eigen::Index>(frames(rng));
        videoset::FrameMatrix m(3 * bins, k);
        for (Eigen::Index c = 0; c < k; ++c) m.col(c) = random_histogram(rng, 3 * bins);
        f.subshots.push_back(std::move(m));
    }
    return f;
}

inline videoset::VideoRecord make_video(const std::vector<std::string>& annotations, double seconds = 5.0) {
    videoset::VideoRecord v{"test", seconds, {}};
    for (std::size_t i = 0; i < annotations.size(); ++i)
        v.subshots.push_back({i, seconds * double(i), seconds * double(i + 1), annotations[i]});
    return v;
}

inline videoset::GroundTruthSummary make_gt(const std::string& author, const std::vector<std::string>& sentences,
                                            const std::vector<long>& ranks) {
    videoset::GroundTruthSummary g{author, {}};
    for (std::size_t i = 0; i < sentences.size(); ++i) g.sentences.push_back({long(i), ranks[i], sentences[i]});
    return g;
}

}  // namespace testing_support
