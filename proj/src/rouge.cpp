#include "videoset/rouge.hpp"

#include <algorithm>

#include "videoset/error.hpp"

namespace videoset {

RougeScore RougeScore::from_counts(std::size_t matches, std::size_t candidate, std::size_t reference) {
    RougeScore s;
    s.match_count = matches;
    s.candidate_units = candidate;
    s.reference_units = reference;
    s.precision = candidate == 0 ? 0.0 : static_cast<double>(matches) / static_cast<double>(candidate);
    s.recall = reference == 0 ? 0.0 : static_cast<double>(matches) / static_cast<double>(reference);
    const double denom = s.precision + s.recall;
    s.f_measure = denom == 0.0 ? 0.0 : 2.0 * s.precision * s.recall / denom;
    return s;
}

std::size_t count_matches(const UnitCounts& candidate, const UnitCounts& reference) {
    // Both maps are ordered; walk them together.
    std::size_t matches = 0;
    auto c = candidate.begin();
    auto r = reference.begin();
    while (c != candidate.end() && r != reference.end()) {
        if (c->first < r->first) {
            ++c;
        } else if (r->first < c->first) {
            ++r;
        } else {
            matches += std::min(c->second, r->second);
            ++c;
            ++r;
        }
    }
    return matches;
}

std::size_t total_units(const UnitCounts& units) {
    std::size_t n = 0;
    for (const auto& [_, count] : units) n += count;
    return n;
}

UnitCounts su_units(const std::vector<std::string>& sentences, const TextProcessor& tp) {
    UnitCounts pooled;
    for (const auto& s : sentences) {
        const auto tokens = tp.normalize(s);
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            ++pooled[tokens[i]];
            for (std::size_t j = i + 1; j < tokens.size(); ++j) ++pooled[tokens[i] + ' ' + tokens[j]];
        }
    }
    return pooled;
}

UnitCounts ngram_units(const std::vector<std::string>& sentences, int n, const TextProcessor& tp) {
    if (n < 1 || n > 2) throw ArgumentError("rouge-n supports n in {1,2}, got " + std::to_string(n));
    UnitCounts pooled;
    for (const auto& s : sentences) {
        const auto tokens = tp.normalize(s);
        if (tokens.size() < static_cast<std::size_t>(n)) continue;
        for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i)
            ++pooled[n == 1 ? tokens[i] : tokens[i] + ' ' + tokens[i + 1]];
    }
    return pooled;
}

namespace {

RougeScore score_units(const UnitCounts& candidate, const UnitCounts& reference) {
    return RougeScore::from_counts(count_matches(candidate, reference), total_units(candidate),
                                   total_units(reference));
}

}  // namespace

RougeScore rouge_su(const std::vector<std::string>& candidate, const std::vector<std::string>& reference,
                    const TextProcessor& tp) {
    return score_units(su_units(candidate, tp), su_units(reference, tp));
}

RougeScore rouge_n(const std::vector<std::string>& candidate, const std::vector<std::string>& reference, int n,
                   const TextProcessor& tp) {
    return score_units(ngram_units(candidate, n, tp), ngram_units(reference, n, tp));
}

Metric parse_metric(const std::string& name) {
    if (name == "rouge-su") return Metric::RougeSU;
    if (name == "rouge-1") return Metric::Rouge1;
    if (name == "rouge-2") return Metric::Rouge2;
    if (name == "pixel") return Metric::Pixel;
    throw ArgumentError("unknown metric '" + name + "'");
}

std::string metric_name(Metric metric) {
    switch (metric) {
        case Metric::RougeSU: return "rouge-su";
        case Metric::Rouge1: return "rouge-1";
        case Metric::Rouge2: return "rouge-2";
        case Metric::Pixel: return "pixel";
    }
    return "unknown";
}

bool is_text_metric(Metric metric) { return metric != Metric::Pixel; }

RougeScore text_similarity(Metric metric, const std::vector<std::string>& candidate,
                           const std::vector<std::string>& reference, const TextProcessor& tp) {
    switch (metric) {
        case Metric::RougeSU: return rouge_su(candidate, reference, tp);
        case Metric::Rouge1: return rouge_n(candidate, reference, 1, tp);
        case Metric::Rouge2: return rouge_n(candidate, reference, 2, tp);
        case Metric::Pixel: break;
    }
    throw ArgumentError("pixel metric is not a text similarity");
}

}  // namespace videoset
