#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "videoset/textproc.hpp"

namespace videoset {

struct RougeScore {
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
    std::size_t match_count = 0;
    std::size_t candidate_units = 0;
    std::size_t reference_units = 0;

    /// Builds P/R/F (beta = 1) from the counts; zero denominators give zero.
    static RougeScore from_counts(std::size_t matches, std::size_t candidate, std::size_t reference);
};

/// Sum over distinct units of min(candidate count, reference count).
std::size_t count_matches(const UnitCounts& candidate, const UnitCounts& reference);

std::size_t total_units(const UnitCounts& units);

/// Unigram + skip-bigram units of every sentence, pooled. Pairs never span sentences.
UnitCounts su_units(const std::vector<std::string>& sentences,
                    const TextProcessor& tp = TextProcessor::standard());

/// Contiguous n-grams of every sentence, pooled.
UnitCounts ngram_units(const std::vector<std::string>& sentences, int n,
                       const TextProcessor& tp = TextProcessor::standard());

RougeScore rouge_su(const std::vector<std::string>& candidate, const std::vector<std::string>& reference,
                    const TextProcessor& tp = TextProcessor::standard());

/// n must be 1 or 2; anything else throws ArgumentError.
RougeScore rouge_n(const std::vector<std::string>& candidate, const std::vector<std::string>& reference, int n,
                   const TextProcessor& tp = TextProcessor::standard());

enum class Metric { RougeSU, Rouge1, Rouge2, Pixel };

/// "rouge-su", "rouge-1", "rouge-2", "pixel".
Metric parse_metric(const std::string& name);
std::string metric_name(Metric metric);
bool is_text_metric(Metric metric);

/// Dispatches to rouge_su / rouge_n. Throws ArgumentError for Metric::Pixel.
RougeScore text_similarity(Metric metric, const std::vector<std::string>& candidate,
                           const std::vector<std::string>& reference,
                           const TextProcessor& tp = TextProcessor::standard());

}  // namespace videoset
