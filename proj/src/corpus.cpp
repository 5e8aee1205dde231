#include "videoset/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "videoset/error.hpp"

namespace videoset {

using nlohmann::json;

namespace {

constexpr double kHistogramSumTolerance = 1e-9;

std::string canonical(const json& j) { return j.dump(2) + "\n"; }

json parse_json(std::string_view text, const char* what) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

const json& member(const json& obj, const char* key, const std::string& context) {
    if (!obj.is_object()) throw ParseError(context + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(context + ": missing field '" + key + "'");
    return *it;
}

template <typename T>
T field(const json& obj, const char* key, const std::string& context) {
    const json& v = member(obj, key, context);
    try {
        if constexpr (std::is_same_v<T, std::string>) {
            if (!v.is_string()) throw ParseError(context + "." + key + ": expected a string");
        } else if constexpr (std::is_floating_point_v<T>) {
            if (!v.is_number()) throw ParseError(context + "." + key + ": expected a number");
        } else if constexpr (std::is_unsigned_v<T>) {
            if (!v.is_number_unsigned()) throw ParseError(context + "." + key + ": expected a non-negative integer");
        } else if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_integer()) throw ParseError(context + "." + key + ": expected an integer");
        }
        return v.get<T>();
    } catch (const json::exception& e) {
        throw ParseError(context + "." + key + ": " + e.what());
    }
}

const json& array_field(const json& obj, const char* key, const std::string& context) {
    const json& v = member(obj, key, context);
    if (!v.is_array()) throw ParseError(context + "." + key + ": expected an array");
    return v;
}

std::string at(const std::string& context, std::size_t i) { return context + "[" + std::to_string(i) + "]"; }

}  // namespace

std::size_t SubshotFeatures::frame_count() const {
    std::size_t n = 0;
    for (const auto& s : subshots) n += static_cast<std::size_t>(s.cols());
    return n;
}

bool SubshotFeatures::operator==(const SubshotFeatures& other) const {
    if (video_id != other.video_id || bins_per_channel != other.bins_per_channel ||
        subshots.size() != other.subshots.size())
        return false;
    for (std::size_t i = 0; i < subshots.size(); ++i) {
        if (subshots[i].rows() != other.subshots[i].rows() || subshots[i].cols() != other.subshots[i].cols())
            return false;
        if (subshots[i] != other.subshots[i]) return false;
    }
    return true;
}

// ---- validation ----------------------------------------------------------

void validate(const VideoRecord& video) {
    if (video.video_id.empty()) throw ValidationError("video_id", std::nullopt, "must be non-empty");
    if (!(video.subshot_seconds > 0.0))
        throw ValidationError("subshot_seconds", std::nullopt, "must be positive");
    if (video.subshots.empty()) throw ValidationError("subshots", std::nullopt, "video has no subshots");
    for (std::size_t i = 0; i < video.subshots.size(); ++i) {
        const auto& s = video.subshots[i];
        if (s.index != i)
            throw ValidationError("subshots.index", i, "expected " + std::to_string(i) + ", got " +
                                                           std::to_string(s.index));
        if (!(s.end_s > s.start_s)) throw ValidationError("subshots.end_s", i, "end_s must exceed start_s");
        if (s.annotation.empty()) throw ValidationError("subshots.text", i, "annotation is empty");
        if (i > 0 && !(s.start_s > video.subshots[i - 1].start_s))
            throw ValidationError("subshots.start_s", i, "subshots are not sorted by start time");
    }
}

void validate(const SummarySelection& summary, std::size_t subshot_count) {
    for (std::size_t i = 0; i < summary.indices.size(); ++i) {
        const auto idx = summary.indices[i];
        if (idx >= subshot_count)
            throw ValidationError("indices", i, "subshot index " + std::to_string(idx) + " out of range [0, " +
                                                    std::to_string(subshot_count) + ")");
        if (i > 0 && idx == summary.indices[i - 1])
            throw ValidationError("indices", i, "duplicate subshot index " + std::to_string(idx));
        if (i > 0 && idx < summary.indices[i - 1])
            throw ValidationError("indices", i, "indices are not in ascending order");
    }
}

void validate(const GroundTruthSummary& gt) {
    if (gt.sentences.empty()) throw ValidationError("sentences", std::nullopt, "ground truth '" + gt.author_id + "' is empty");
    const std::size_t k = gt.sentences.size();
    std::vector<bool> seen(k + 1, false);
    for (std::size_t i = 0; i < k; ++i) {
        const auto& s = gt.sentences[i];
        if (i > 0 && !(s.temporal_pos > gt.sentences[i - 1].temporal_pos))
            throw ValidationError("sentences.temporal_pos", i, "temporal positions must strictly increase");
        if (s.rank < 1 || static_cast<std::size_t>(s.rank) > k)
            throw ValidationError("sentences.rank", i, "rank " + std::to_string(s.rank) + " outside 1.." + std::to_string(k));
        if (seen[static_cast<std::size_t>(s.rank)])
            throw ValidationError("sentences.rank", i, "rank " + std::to_string(s.rank) + " repeated");
        seen[static_cast<std::size_t>(s.rank)] = true;
        if (s.text.empty()) throw ValidationError("sentences.text", i, "sentence is empty");
    }
}

void validate(const GroundTruthSet& gts) {
    if (gts.summaries.empty()) throw ValidationError("summaries", std::nullopt, "no ground-truth summaries");
    for (std::size_t i = 0; i < gts.summaries.size(); ++i) {
        try {
            validate(gts.summaries[i]);
        } catch (const ValidationError& e) {
            throw ValidationError("summaries", i, e.what());
        }
    }
}

void validate(const SubshotFeatures& f) {
    if (f.bins_per_channel < 1) throw ValidationError("bins_per_channel", std::nullopt, "must be positive");
    const Eigen::Index dims = 3 * f.bins_per_channel;
    if (f.subshots.empty()) throw ValidationError("subshots", std::nullopt, "no subshots");
    for (std::size_t i = 0; i < f.subshots.size(); ++i) {
        const auto& m = f.subshots[i];
        if (m.cols() == 0) throw ValidationError("subshots.frames", i, "subshot has no frames");
        if (m.rows() != dims)
            throw ValidationError("subshots.frames", i, "histogram length " + std::to_string(m.rows()) +
                                                            " != " + std::to_string(dims));
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if ((m.col(c).array() < 0.0).any() || !m.col(c).allFinite())
                throw ValidationError("subshots.frames", i, "frame " + std::to_string(c) + " has a negative or non-finite bin");
            if (std::abs(m.col(c).sum() - 1.0) > kHistogramSumTolerance)
                throw ValidationError("subshots.frames", i, "frame " + std::to_string(c) + " is not L1-normalized");
        }
    }
}

// ---- summary resolution --------------------------------------------------

SummarySelection resolve(const SummarySpec& spec, const VideoRecord& video) {
    const std::size_t m = video.size();
    std::set<std::size_t> chosen;
    if (const auto* idx = std::get_if<std::vector<std::size_t>>(&spec.selection)) {
        SummarySelection s{spec.video_id, *idx};
        validate(s, m);
        return s;
    }
    if (const auto* times = std::get_if<std::vector<double>>(&spec.selection)) {
        for (std::size_t i = 0; i < times->size(); ++i) {
            const double t = (*times)[i];
            if (!(t >= 0.0)) throw ValidationError("keyframe_times_s", i, "negative or non-finite time");
            const double slot = std::floor(t / video.subshot_seconds);
            if (slot >= static_cast<double>(m))
                throw ValidationError("keyframe_times_s", i, "time " + std::to_string(t) + "s lies past the last subshot");
            chosen.insert(static_cast<std::size_t>(slot));
        }
    } else {
        const auto& spans = std::get<std::vector<Span>>(spec.selection);
        for (std::size_t i = 0; i < spans.size(); ++i) {
            const auto& sp = spans[i];
            if (!(sp.end_s > sp.start_s)) throw ValidationError("spans.end_s", i, "end_s must exceed start_s");
            bool any = false;
            for (const auto& sub : video.subshots) {
                if (sub.start_s < sp.end_s && sub.end_s > sp.start_s) {
                    chosen.insert(sub.index);
                    any = true;
                }
            }
            if (!any) throw ValidationError("spans", i, "span overlaps no subshot");
        }
    }
    return SummarySelection{spec.video_id, std::vector<std::size_t>(chosen.begin(), chosen.end())};
}

// ---- serialization -------------------------------------------------------

std::string serialize(const VideoRecord& video) {
    json subs = json::array();
    for (const auto& s : video.subshots)
        subs.push_back({{"index", s.index}, {"start_s", s.start_s}, {"end_s", s.end_s}, {"text", s.annotation}});
    return canonical({{"video_id", video.video_id}, {"subshot_seconds", video.subshot_seconds}, {"subshots", subs}});
}

std::string serialize(const GroundTruthSet& gts) {
    json summaries = json::array();
    for (const auto& g : gts.summaries) {
        json sentences = json::array();
        for (const auto& s : g.sentences)
            sentences.push_back({{"temporal_pos", s.temporal_pos}, {"rank", s.rank}, {"text", s.text}});
        summaries.push_back({{"author_id", g.author_id}, {"sentences", sentences}});
    }
    return canonical({{"video_id", gts.video_id}, {"summaries", summaries}});
}

std::string serialize(const SummarySpec& summary) {
    json j = {{"video_id", summary.video_id}};
    if (const auto* idx = std::get_if<std::vector<std::size_t>>(&summary.selection)) {
        j["indices"] = *idx;
    } else if (const auto* times = std::get_if<std::vector<double>>(&summary.selection)) {
        j["keyframe_times_s"] = *times;
    } else {
        json spans = json::array();
        for (const auto& sp : std::get<std::vector<Span>>(summary.selection))
            spans.push_back({{"start_s", sp.start_s}, {"end_s", sp.end_s}});
        j["spans"] = spans;
    }
    return canonical(j);
}

std::string serialize(const SummarySelection& summary) {
    return serialize(SummarySpec{summary.video_id, summary.indices});
}

std::string serialize(const SubshotFeatures& features) {
    json subs = json::array();
    for (std::size_t i = 0; i < features.subshots.size(); ++i) {
        const auto& m = features.subshots[i];
        json frames = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            json bins = json::array();
            for (Eigen::Index r = 0; r < m.rows(); ++r) bins.push_back(m(r, c));
            frames.push_back(std::move(bins));
        }
        subs.push_back({{"index", i}, {"frames", std::move(frames)}});
    }
    return canonical({{"video_id", features.video_id}, {"bins_per_channel", features.bins_per_channel}, {"subshots", subs}});
}

// ---- parsing -------------------------------------------------------------

VideoRecord parse_annotations(std::string_view text) {
    const json j = parse_json(text, "annotations");
    VideoRecord v;
    v.video_id = field<std::string>(j, "video_id", "annotations");
    v.subshot_seconds = field<double>(j, "subshot_seconds", "annotations");
    const json& subs = array_field(j, "subshots", "annotations");
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const auto ctx = at("subshots", i);
        v.subshots.push_back(Subshot{field<std::size_t>(subs[i], "index", ctx), field<double>(subs[i], "start_s", ctx),
                                     field<double>(subs[i], "end_s", ctx), field<std::string>(subs[i], "text", ctx)});
    }
    validate(v);
    return v;
}

GroundTruthSet parse_ground_truths(std::string_view text) {
    const json j = parse_json(text, "ground truths");
    GroundTruthSet gts;
    gts.video_id = field<std::string>(j, "video_id", "ground_truths");
    const json& sums = array_field(j, "summaries", "ground_truths");
    for (std::size_t i = 0; i < sums.size(); ++i) {
        const auto ctx = at("summaries", i);
        GroundTruthSummary g;
        g.author_id = field<std::string>(sums[i], "author_id", ctx);
        const json& sents = array_field(sums[i], "sentences", ctx);
        for (std::size_t k = 0; k < sents.size(); ++k) {
            const auto sctx = ctx + "." + at("sentences", k);
            g.sentences.push_back(GroundTruthSentence{field<long>(sents[k], "temporal_pos", sctx),
                                                      field<long>(sents[k], "rank", sctx),
                                                      field<std::string>(sents[k], "text", sctx)});
        }
        gts.summaries.push_back(std::move(g));
    }
    validate(gts);
    return gts;
}

SummarySpec parse_summary(std::string_view text) {
    const json j = parse_json(text, "summary");
    SummarySpec s;
    s.video_id = field<std::string>(j, "video_id", "summary");
    const int forms = static_cast<int>(j.contains("indices")) + static_cast<int>(j.contains("keyframe_times_s")) +
                      static_cast<int>(j.contains("spans"));
    if (forms != 1) throw ParseError("summary: exactly one of 'indices', 'keyframe_times_s', 'spans' is required");
    if (j.contains("indices")) {
        const json& a = array_field(j, "indices", "summary");
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!a[i].is_number_unsigned()) throw ParseError("summary." + at("indices", i) + ": expected a non-negative integer");
            idx.push_back(a[i].get<std::size_t>());
        }
        s.selection = std::move(idx);
    } else if (j.contains("keyframe_times_s")) {
        const json& a = array_field(j, "keyframe_times_s", "summary");
        std::vector<double> times;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!a[i].is_number()) throw ParseError("summary." + at("keyframe_times_s", i) + ": expected a number");
            times.push_back(a[i].get<double>());
        }
        s.selection = std::move(times);
    } else {
        const json& a = array_field(j, "spans", "summary");
        std::vector<Span> spans;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const auto ctx = "summary." + at("spans", i);
            spans.push_back(Span{field<double>(a[i], "start_s", ctx), field<double>(a[i], "end_s", ctx)});
        }
        s.selection = std::move(spans);
    }
    return s;
}

SubshotFeatures parse_features(std::string_view text) {
    const json j = parse_json(text, "features");
    SubshotFeatures f;
    f.video_id = field<std::string>(j, "video_id", "features");
    f.bins_per_channel = field<int>(j, "bins_per_channel", "features");
    if (f.bins_per_channel < 1) throw ValidationError("bins_per_channel", std::nullopt, "must be positive");
    const Eigen::Index dims = 3 * f.bins_per_channel;
    const json& subs = array_field(j, "subshots", "features");
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const auto ctx = at("subshots", i);
        const auto index = field<std::size_t>(subs[i], "index", ctx);
        if (index != i) throw ValidationError("subshots.index", i, "expected " + std::to_string(i) + ", got " + std::to_string(index));
        const json& frames = array_field(subs[i], "frames", ctx);
        FrameMatrix m(dims, static_cast<Eigen::Index>(frames.size()));
        for (std::size_t c = 0; c < frames.size(); ++c) {
            const json& bins = frames[c];
            if (!bins.is_array() || static_cast<Eigen::Index>(bins.size()) != dims)
                throw ValidationError("subshots.frames", i, "frame " + std::to_string(c) + " must have " + std::to_string(dims) + " bins");
            for (Eigen::Index r = 0; r < dims; ++r) {
                if (!bins[static_cast<std::size_t>(r)].is_number())
                    throw ParseError(ctx + ".frames: expected numbers");
                m(r, static_cast<Eigen::Index>(c)) = bins[static_cast<std::size_t>(r)].get<double>();
            }
        }
        f.subshots.push_back(std::move(m));
    }
    validate(f);
    return f;
}

// ---- files ---------------------------------------------------------------

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading " + path.string());
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw IoError("error writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

VideoRecord load_annotations(const std::filesystem::path& path) { return parse_annotations(read_file(path)); }
GroundTruthSet load_ground_truths(const std::filesystem::path& path) { return parse_ground_truths(read_file(path)); }
SummarySpec load_summary_spec(const std::filesystem::path& path) { return parse_summary(read_file(path)); }
SubshotFeatures load_features(const std::filesystem::path& path) { return parse_features(read_file(path)); }

SummarySelection load_summary(const std::filesystem::path& path, const VideoRecord& video) {
    return resolve(load_summary_spec(path), video);
}

void save_annotations(const std::filesystem::path& path, const VideoRecord& video) {
    validate(video);
    write_file_atomic(path, serialize(video));
}

void save_ground_truths(const std::filesystem::path& path, const GroundTruthSet& gts) {
    validate(gts);
    write_file_atomic(path, serialize(gts));
}

void save_summary(const std::filesystem::path& path, const SummarySpec& summary) {
    write_file_atomic(path, serialize(summary));
}

void save_summary(const std::filesystem::path& path, const SummarySelection& summary) {
    write_file_atomic(path, serialize(summary));
}

void save_features(const std::filesystem::path& path, const SubshotFeatures& features) {
    validate(features);
    write_file_atomic(path, serialize(features));
}

}  // namespace videoset
