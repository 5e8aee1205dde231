#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace videoset {

struct Subshot {
    std::size_t index = 0;
    double start_s = 0.0;
    double end_s = 0.0;
    std::string annotation;

    bool operator==(const Subshot&) const = default;
};

struct VideoRecord {
    std::string video_id;
    double subshot_seconds = 0.0;
    std::vector<Subshot> subshots;

    std::size_t size() const { return subshots.size(); }
    bool operator==(const VideoRecord&) const = default;
};

/// Indices are strictly increasing and lie in [0, M).
struct SummarySelection {
    std::string video_id;
    std::vector<std::size_t> indices;

    std::size_t size() const { return indices.size(); }
    bool operator==(const SummarySelection&) const = default;
};

struct Span {
    double start_s = 0.0;
    double end_s = 0.0;
    bool operator==(const Span&) const = default;
};

/// A summary file as written, before being mapped onto a video's subshots.
struct SummarySpec {
    std::string video_id;
    std::variant<std::vector<std::size_t>, std::vector<double>, std::vector<Span>> selection;

    bool operator==(const SummarySpec&) const = default;
};

struct GroundTruthSentence {
    long temporal_pos = 0;
    long rank = 0;
    std::string text;

    bool operator==(const GroundTruthSentence&) const = default;
};

struct GroundTruthSummary {
    std::string author_id;
    std::vector<GroundTruthSentence> sentences;

    bool operator==(const GroundTruthSummary&) const = default;
};

struct GroundTruthSet {
    std::string video_id;
    std::vector<GroundTruthSummary> summaries;

    bool operator==(const GroundTruthSet&) const = default;
};

/// One column per frame (sampled at 1 fps), 3 * bins_per_channel rows.
using FrameMatrix = Eigen::MatrixXd;

struct SubshotFeatures {
    std::string video_id;
    int bins_per_channel = 16;
    std::vector<FrameMatrix> subshots;

    std::size_t frame_count() const;
    bool operator==(const SubshotFeatures& other) const;
};

// Validation. Each throws ValidationError naming the field and index at fault.
void validate(const VideoRecord& video);
void validate(const SummarySelection& summary, std::size_t subshot_count);
void validate(const GroundTruthSummary& gt);
void validate(const GroundTruthSet& gts);
void validate(const SubshotFeatures& features);

/// Maps indices, keyframe times (floor(t / subshot_seconds)) or spans (every
/// subshot overlapping [start, end)) to a validated selection. Duplicates collapse.
SummarySelection resolve(const SummarySpec& spec, const VideoRecord& video);

// Canonical serialization: UTF-8 JSON, sorted keys, two-space indent, trailing newline.
std::string serialize(const VideoRecord& video);
std::string serialize(const GroundTruthSet& gts);
std::string serialize(const SummarySpec& summary);
std::string serialize(const SummarySelection& summary);
std::string serialize(const SubshotFeatures& features);

VideoRecord parse_annotations(std::string_view json);
GroundTruthSet parse_ground_truths(std::string_view json);
SummarySpec parse_summary(std::string_view json);
SubshotFeatures parse_features(std::string_view json);

VideoRecord load_annotations(const std::filesystem::path& path);
GroundTruthSet load_ground_truths(const std::filesystem::path& path);
SummarySpec load_summary_spec(const std::filesystem::path& path);
SummarySelection load_summary(const std::filesystem::path& path, const VideoRecord& video);
SubshotFeatures load_features(const std::filesystem::path& path);

void save_annotations(const std::filesystem::path& path, const VideoRecord& video);
void save_ground_truths(const std::filesystem::path& path, const GroundTruthSet& gts);
void save_summary(const std::filesystem::path& path, const SummarySpec& summary);
void save_summary(const std::filesystem::path& path, const SummarySelection& summary);
void save_features(const std::filesystem::path& path, const SubshotFeatures& features);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temp file, then renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace videoset
