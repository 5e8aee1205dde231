#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "videoset/corpus.hpp"
#include "videoset/error.hpp"

namespace videoset {

/// Interleaved 8-bit RGB, row-major.
struct RgbFrame {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * static_cast<std::size_t>(height); }
};

/// Binary PPM (P6, maxval 255). Header comments are allowed.
RgbFrame parse_ppm(const std::string& bytes);
RgbFrame load_ppm(const std::filesystem::path& path);
std::string encode_ppm(const RgbFrame& frame);

/// Per-channel B-bin histograms, concatenated R, G, B, normalized by 3 * pixels.
/// B must divide 256.
Eigen::VectorXd compute_histogram(const RgbFrame& frame, int bins_per_channel = 16);

/// Half-weighted symmetric chi-square distance; bins with a + b = 0 contribute 0.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar chi_square(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    using Scalar = typename DerivedA::Scalar;
    if (a.size() != b.size())
        throw ArgumentError("chi_square: length mismatch (" + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()) + ")");
    Scalar acc(0);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const Scalar s = a.coeff(i) + b.coeff(i);
        if (s == Scalar(0)) continue;
        const Scalar d = a.coeff(i) - b.coeff(i);
        acc += d * d / s;
    }
    return acc / Scalar(2);
}

/// Minimum chi-square over all (column of a, column of b) pairs.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar subshot_min_distance(const Eigen::MatrixBase<DerivedA>& a,
                                               const Eigen::MatrixBase<DerivedB>& b) {
    using Scalar = typename DerivedA::Scalar;
    if (a.cols() == 0 || b.cols() == 0) throw ArgumentError("subshot_min_distance: empty frame list");
    Scalar best = std::numeric_limits<Scalar>::infinity();
    for (Eigen::Index i = 0; i < a.cols(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) best = std::min(best, chi_square(a.col(i), b.col(j)));
    return best;
}

/// Mean over summary subshots of the nearest ground-truth subshot distance.
/// Lower means visually closer.
double pixel_summary_distance(const SummarySelection& summary, const SummarySelection& gt_subshots,
                              const SubshotFeatures& features);

/// M x M matrix of subshot_min_distance between every pair of subshots.
Eigen::MatrixXd subshot_distance_matrix(const SubshotFeatures& features);

/// Scans frame_<subshot>_<k>.ppm files in a directory and builds per-subshot
/// histogram matrices, frames ordered by k. Subshot indices must be contiguous from 0.
SubshotFeatures extract_features(const std::filesystem::path& frames_dir, const std::string& video_id,
                                 int bins_per_channel = 16);

}  // namespace videoset
