// Porter stemmer. Follows the structure of Martin Porter's reference C
// implementation, including its two published departures from the 1980
// description ("bli" -> "ble" in place of "abli" -> "able", and "logi" -> "log").

#include <algorithm>
#include <string>
#include <string_view>

#include "videoset/textproc.hpp"

namespace videoset {
namespace {

class PorterStemmer {
public:
    explicit PorterStemmer(std::string_view word) : b_(word), k_(static_cast<int>(word.size()) - 1) {}

    std::string run() {
        if (k_ <= 1) return b_;
        step1ab();
        if (k_ > 0) {
            step1c();
            step2();
            step3();
            step4();
            step5();
        }
        return b_.substr(0, static_cast<std::size_t>(k_ + 1));
    }

private:
    bool cons(int i) const {
        switch (b_[i]) {
            case 'a': case 'e': case 'i': case 'o': case 'u':
                return false;
            case 'y':
                return i == 0 ? true : !cons(i - 1);
            default:
                return true;
        }
    }

    // Number of VC sequences in b[0..j].
    int m() const {
        int n = 0;
        int i = 0;
        while (true) {
            if (i > j_) return n;
            if (!cons(i)) break;
            ++i;
        }
        ++i;
        while (true) {
            while (true) {
                if (i > j_) return n;
                if (cons(i)) break;
                ++i;
            }
            ++i;
            ++n;
            while (true) {
                if (i > j_) return n;
                if (!cons(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in_stem() const {
        for (int i = 0; i <= j_; ++i)
            if (!cons(i)) return true;
        return false;
    }

    bool double_consonant(int j) const {
        if (j < 1) return false;
        if (b_[j] != b_[j - 1]) return false;
        return cons(j);
    }

    // consonant-vowel-consonant ending at i, last consonant not w, x or y.
    bool cvc(int i) const {
        if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
        const char ch = b_[i];
        return !(ch == 'w' || ch == 'x' || ch == 'y');
    }

    bool ends(std::string_view s) {
        const int length = static_cast<int>(s.size());
        if (s.back() != b_[k_]) return false;
        if (length > k_ + 1) return false;
        if (std::string_view(b_).substr(static_cast<std::size_t>(k_ - length + 1), s.size()) != s)
            return false;
        j_ = k_ - length;
        return true;
    }

    void set_to(std::string_view s) {
        b_.replace(static_cast<std::size_t>(j_ + 1), b_.size() - static_cast<std::size_t>(j_ + 1), s);
        k_ = j_ + static_cast<int>(s.size());
    }

    void replace_if_measured(std::string_view s) {
        if (m() > 0) set_to(s);
    }

    void step1ab() {
        if (b_[k_] == 's') {
            if (ends("sses"))
                k_ -= 2;
            else if (ends("ies"))
                set_to("i");
            else if (b_[k_ - 1] != 's')
                --k_;
        }
        if (ends("eed")) {
            if (m() > 0) --k_;
        } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
            k_ = j_;
            b_.resize(static_cast<std::size_t>(k_ + 1));
            if (ends("at"))
                set_to("ate");
            else if (ends("bl"))
                set_to("ble");
            else if (ends("iz"))
                set_to("ize");
            else if (double_consonant(k_)) {
                --k_;
                const char ch = b_[k_];
                if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
            } else if (m() == 1 && cvc(k_)) {
                j_ = k_;
                set_to("e");
            }
        }
        b_.resize(static_cast<std::size_t>(k_ + 1));
    }

    void step1c() {
        if (ends("y") && vowel_in_stem()) b_[k_] = 'i';
    }

    // Tries each (suffix, replacement) in order; the first matching suffix
    // decides, whether or not the measure condition then holds.
    template <std::size_t N>
    void try_rules(const std::pair<std::string_view, std::string_view> (&rules)[N]) {
        for (const auto& [suffix, repl] : rules) {
            if (ends(suffix)) {
                replace_if_measured(repl);
                return;
            }
        }
    }

    void step2() {
        using R = std::pair<std::string_view, std::string_view>;
        switch (b_[k_ - 1]) {
            case 'a': { static const R r[] = {{"ational", "ate"}, {"tional", "tion"}}; try_rules(r); break; }
            case 'c': { static const R r[] = {{"enci", "ence"}, {"anci", "ance"}}; try_rules(r); break; }
            case 'e': { static const R r[] = {{"izer", "ize"}}; try_rules(r); break; }
            case 'l': {
                static const R r[] = {{"bli", "ble"}, {"alli", "al"}, {"entli", "ent"}, {"eli", "e"}, {"ousli", "ous"}};
                try_rules(r);
                break;
            }
            case 'o': {
                static const R r[] = {{"ization", "ize"}, {"ation", "ate"}, {"ator", "ate"}};
                try_rules(r);
                break;
            }
            case 's': {
                static const R r[] = {{"alism", "al"}, {"iveness", "ive"}, {"fulness", "ful"}, {"ousness", "ous"}};
                try_rules(r);
                break;
            }
            case 't': {
                static const R r[] = {{"aliti", "al"}, {"iviti", "ive"}, {"biliti", "ble"}};
                try_rules(r);
                break;
            }
            case 'g': { static const R r[] = {{"logi", "log"}}; try_rules(r); break; }
            default: break;
        }
    }

    void step3() {
        using R = std::pair<std::string_view, std::string_view>;
        switch (b_[k_]) {
            case 'e': {
                static const R r[] = {{"icate", "ic"}, {"ative", ""}, {"alize", "al"}};
                try_rules(r);
                break;
            }
            case 'i': { static const R r[] = {{"iciti", "ic"}}; try_rules(r); break; }
            case 'l': { static const R r[] = {{"ical", "ic"}, {"ful", ""}}; try_rules(r); break; }
            case 's': { static const R r[] = {{"ness", ""}}; try_rules(r); break; }
            default: break;
        }
    }

    void step4() {
        auto any_of = [this](std::initializer_list<std::string_view> suffixes) {
            return std::any_of(suffixes.begin(), suffixes.end(), [this](std::string_view s) { return ends(s); });
        };
        bool matched = false;
        switch (b_[k_ - 1]) {
            case 'a': matched = ends("al"); break;
            case 'c': matched = any_of({"ance", "ence"}); break;
            case 'e': matched = ends("er"); break;
            case 'i': matched = ends("ic"); break;
            case 'l': matched = any_of({"able", "ible"}); break;
            case 'n': matched = any_of({"ant", "ement", "ment", "ent"}); break;
            case 'o':
                if (ends("ion") && j_ >= 0 && (b_[j_] == 's' || b_[j_] == 't'))
                    matched = true;
                else
                    matched = ends("ou");
                break;
            case 's': matched = ends("ism"); break;
            case 't': matched = any_of({"ate", "iti"}); break;
            case 'u': matched = ends("ous"); break;
            case 'v': matched = ends("ive"); break;
            case 'z': matched = ends("ize"); break;
            default: break;
        }
        if (matched && m() > 1) k_ = j_;
    }

    void step5() {
        j_ = k_;
        if (b_[k_] == 'e') {
            const int a = m();
            if (a > 1 || (a == 1 && !cvc(k_ - 1))) --k_;
        }
        if (b_[k_] == 'l' && double_consonant(k_) && m() > 1) --k_;
    }

    std::string b_;
    int k_;
    int j_ = 0;
};

}  // namespace

Token porter_stem(std::string_view token) {
    if (std::any_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return Token(token);
    return PorterStemmer(token).run();
}

}  // namespace videoset
