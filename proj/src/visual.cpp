#include "videoset/visual.hpp"

#include <cctype>
#include <map>
#include <regex>

namespace videoset {

namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string header_token(const std::string& bytes, std::size_t& pos) {
    while (pos < bytes.size()) {
        const auto c = static_cast<unsigned char>(bytes[pos]);
        if (c == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        } else if (std::isspace(c)) {
            ++pos;
        } else {
            break;
        }
    }
    const std::size_t start = pos;
    while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos])) && bytes[pos] != '#') ++pos;
    if (start == pos) throw ParseError("ppm: truncated header");
    return bytes.substr(start, pos - start);
}

int header_int(const std::string& bytes, std::size_t& pos, const char* what) {
    const auto tok = header_token(bytes, pos);
    for (char c : tok)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError(std::string("ppm: malformed ") + what);
    if (tok.size() > 9) throw ParseError(std::string("ppm: ") + what + " too large");
    return std::stoi(tok);
}

}  // namespace

RgbFrame parse_ppm(const std::string& bytes) {
    std::size_t pos = 0;
    if (bytes.size() < 2 || bytes[0] != 'P') throw ParseError("ppm: missing magic number");
    const auto magic = header_token(bytes, pos);
    if (magic != "P6") throw ParseError("ppm: unsupported format '" + magic + "' (only binary P6 is accepted)");
    RgbFrame frame;
    frame.width = header_int(bytes, pos, "width");
    frame.height = header_int(bytes, pos, "height");
    const int maxval = header_int(bytes, pos, "maxval");
    if (maxval != 255) throw ParseError("ppm: unsupported maxval " + std::to_string(maxval));
    if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
        throw ParseError("ppm: truncated header");
    ++pos;  // single whitespace byte before the raster
    const std::size_t need = 3 * frame.pixel_count();
    if (bytes.size() - pos < need)
        throw ParseError("ppm: truncated payload (" + std::to_string(bytes.size() - pos) + " of " +
                         std::to_string(need) + " bytes)");
    frame.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                        bytes.begin() + static_cast<std::ptrdiff_t>(pos + need));
    return frame;
}

RgbFrame load_ppm(const std::filesystem::path& path) {
    try {
        return parse_ppm(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::string encode_ppm(const RgbFrame& frame) {
    std::string out = "P6\n" + std::to_string(frame.width) + " " + std::to_string(frame.height) + "\n255\n";
    out.append(frame.pixels.begin(), frame.pixels.end());
    return out;
}

Eigen::VectorXd compute_histogram(const RgbFrame& frame, int bins_per_channel) {
    if (bins_per_channel < 1 || 256 % bins_per_channel != 0)
        throw ArgumentError("bins_per_channel must divide 256, got " + std::to_string(bins_per_channel));
    const std::size_t n = frame.pixel_count();
    if (n == 0) throw ArgumentError("compute_histogram: frame has no pixels");
    if (frame.pixels.size() != 3 * n) throw ArgumentError("compute_histogram: pixel buffer size mismatch");

    std::vector<std::size_t> counts(3 * static_cast<std::size_t>(bins_per_channel), 0);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t c = 0; c < 3; ++c) {
            const std::size_t v = frame.pixels[3 * p + c];
            ++counts[c * static_cast<std::size_t>(bins_per_channel) + v * static_cast<std::size_t>(bins_per_channel) / 256];
        }
    }
    Eigen::VectorXd h(static_cast<Eigen::Index>(counts.size()));
    const double denom = 3.0 * static_cast<double>(n);
    for (std::size_t i = 0; i < counts.size(); ++i) h(static_cast<Eigen::Index>(i)) = static_cast<double>(counts[i]) / denom;
    return h;
}

double pixel_summary_distance(const SummarySelection& summary, const SummarySelection& gt_subshots,
                              const SubshotFeatures& features) {
    if (summary.indices.empty()) throw ArgumentError("pixel_summary_distance: empty summary");
    if (gt_subshots.indices.empty()) throw ArgumentError("pixel_summary_distance: empty ground-truth selection");
    const auto m = features.subshots.size();
    validate(summary, m);
    validate(gt_subshots, m);
    double total = 0.0;
    for (auto s : summary.indices) {
        double best = std::numeric_limits<double>::infinity();
        for (auto g : gt_subshots.indices)
            best = std::min(best, subshot_min_distance(features.subshots[s], features.subshots[g]));
        total += best;
    }
    return total / static_cast<double>(summary.indices.size());
}

Eigen::MatrixXd subshot_distance_matrix(const SubshotFeatures& features) {
    const auto m = static_cast<Eigen::Index>(features.subshots.size());
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = i + 1; j < m; ++j)
            d(i, j) = d(j, i) = subshot_min_distance(features.subshots[static_cast<std::size_t>(i)],
                                                     features.subshots[static_cast<std::size_t>(j)]);
    return d;
}

SubshotFeatures extract_features(const std::filesystem::path& frames_dir, const std::string& video_id,
                                 int bins_per_channel) {
    if (!std::filesystem::is_directory(frames_dir)) throw IoError("not a directory: " + frames_dir.string());
    static const std::regex pattern(R"(frame_(\d+)_(\d+)\.ppm)");
    std::map<std::size_t, std::map<std::size_t, std::filesystem::path>> files;
    for (const auto& entry : std::filesystem::directory_iterator(frames_dir)) {
        std::smatch match;
        const auto name = entry.path().filename().string();
        if (!entry.is_regular_file() || !std::regex_match(name, match, pattern)) continue;
        files[std::stoul(match[1].str())][std::stoul(match[2].str())] = entry.path();
    }
    if (files.empty()) throw ValidationError("frames", std::nullopt, "no frame_<subshot>_<k>.ppm files in " + frames_dir.string());

    SubshotFeatures features;
    features.video_id = video_id;
    features.bins_per_channel = bins_per_channel;
    std::size_t expected = 0;
    for (const auto& [subshot, frames] : files) {
        if (subshot != expected)
            throw ValidationError("frames", expected, "no frames for subshot " + std::to_string(expected));
        FrameMatrix m(3 * bins_per_channel, static_cast<Eigen::Index>(frames.size()));
        Eigen::Index col = 0;
        for (const auto& [_, path] : frames) m.col(col++) = compute_histogram(load_ppm(path), bins_per_channel);
        features.subshots.push_back(std::move(m));
        ++expected;
    }
    return features;
}

}  // namespace videoset
