#include "videoset/textproc.hpp"

#include <fstream>
#include <sstream>

#include "videoset/error.hpp"

namespace videoset {

namespace detail {
std::string_view bundled_smart_stopwords();
}

UnitCounts SentenceUnits::pooled() const {
    UnitCounts counts;
    for (const auto& u : unigrams) ++counts[u];
    for (const auto& [a, b] : skip_bigrams) ++counts[a + ' ' + b];
    return counts;
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    Token current;
    for (char raw : text) {
        char c = raw;
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
            current.push_back(c);
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

StopwordList StopwordList::parse(std::string_view contents) {
    std::unordered_set<std::string> words;
    std::size_t pos = 0;
    while (pos <= contents.size()) {
        auto eol = contents.find('\n', pos);
        if (eol == std::string_view::npos) eol = contents.size();
        std::string_view line = contents.substr(pos, eol - pos);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.remove_suffix(1);
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
        if (!line.empty() && line.front() != '#') words.emplace(line);
        pos = eol + 1;
    }
    return StopwordList(std::move(words));
}

StopwordList StopwordList::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open stopword list " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

const StopwordList& StopwordList::smart() {
    static const StopwordList list = parse(detail::bundled_smart_stopwords());
    return list;
}

const TextProcessor& TextProcessor::standard() {
    static const TextProcessor processor;
    return processor;
}

std::vector<Token> TextProcessor::remove_stopwords(const std::vector<Token>& tokens) const {
    std::vector<Token> kept;
    kept.reserve(tokens.size());
    for (const auto& t : tokens)
        if (!stopwords_.contains(t)) kept.push_back(t);
    return kept;
}

std::vector<Token> TextProcessor::normalize(std::string_view sentence) const {
    auto tokens = remove_stopwords(tokenize(sentence));
    for (auto& t : tokens) t = porter_stem(t);
    return tokens;
}

SentenceUnits TextProcessor::extract_units(std::string_view sentence) const {
    SentenceUnits units;
    units.unigrams = normalize(sentence);
    const auto& u = units.unigrams;
    units.skip_bigrams.reserve(u.size() * (u.size() > 0 ? u.size() - 1 : 0) / 2);
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j) units.skip_bigrams.emplace_back(u[i], u[j]);
    return units;
}

}  // namespace videoset
