#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace videoset {

/// A lowercase run of [a-z0-9]. Plain string; the tokenizer is the only producer.
using Token = std::string;

/// Multiset of counting units keyed by their canonical spelling. Unigrams are
/// the token itself, pairs are the two tokens joined by a single space (tokens
/// never contain spaces, so the encoding is unambiguous).
using UnitCounts = std::map<std::string, std::size_t>;

struct SentenceUnits {
    std::vector<Token> unigrams;
    std::vector<std::pair<Token, Token>> skip_bigrams;

    /// Unigrams and skip-bigrams pooled into one multiset.
    UnitCounts pooled() const;
};

/// Splits on every character outside [a-z0-9] after ASCII lowercasing.
std::vector<Token> tokenize(std::string_view text);

/// Porter's suffix-stripping stemmer, following the author's reference
/// implementation. Tokens containing a digit are returned unchanged.
Token porter_stem(std::string_view token);

class StopwordList {
public:
    StopwordList() = default;
    explicit StopwordList(std::unordered_set<std::string> words) : words_(std::move(words)) {}

    /// One token per line; blank lines and lines starting with '#' are skipped.
    static StopwordList parse(std::string_view contents);
    static StopwordList load(const std::filesystem::path& path);
    /// The bundled SMART list.
    static const StopwordList& smart();

    bool contains(std::string_view token) const { return words_.count(std::string(token)) != 0; }
    std::size_t size() const { return words_.size(); }

private:
    std::unordered_set<std::string> words_;
};

/// tokenize -> drop stopwords -> stem. Immutable after construction.
class TextProcessor {
public:
    TextProcessor() : stopwords_(StopwordList::smart()) {}
    explicit TextProcessor(StopwordList stopwords) : stopwords_(std::move(stopwords)) {}

    static const TextProcessor& standard();

    std::vector<Token> remove_stopwords(const std::vector<Token>& tokens) const;
    /// Surviving, stemmed tokens of one sentence in order.
    std::vector<Token> normalize(std::string_view sentence) const;
    /// All unigrams and every in-order pair (any gap) of the normalized tokens.
    SentenceUnits extract_units(std::string_view sentence) const;

    const StopwordList& stopwords() const { return stopwords_; }

private:
    StopwordList stopwords_;
};

}  // namespace videoset
