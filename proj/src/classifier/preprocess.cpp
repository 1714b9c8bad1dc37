#include "kgsec/classifier/preprocess.hpp"

#include "kgsec/error.hpp"
#include "kgsec/text/porter_stemmer.hpp"
#include "kgsec/text/stopwords.hpp"
#include "kgsec/text/tokenize.hpp"

#include <algorithm>
#include <cctype>

namespace kgsec::classifier {

namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

// Drops everything except letters, digits and internal hyphens.
std::string strip_noise(std::string_view token) {
    std::string out;
    for (char c : token)
        if (is_alnum(c) || c == '-') out += c;
    while (!out.empty() && out.front() == '-') out.erase(out.begin());
    while (!out.empty() && out.back() == '-') out.pop_back();
    return out;
}

}  // namespace

Preprocessor::Preprocessor(PreprocessConfig cfg) : cfg_(std::move(cfg)) {
    try {
        protected_ = std::regex(cfg_.protected_pattern, std::regex::ECMAScript | std::regex::optimize);
    } catch (const std::regex_error& e) {
        throw ValidationError("invalid protected-token pattern: " + std::string(e.what()));
    }
    if (cfg_.use_bundled_stopwords) {
        const auto& bundled = text::english_stopwords();
        stopwords_.assign(bundled.begin(), bundled.end());
    }
    stopwords_.insert(stopwords_.end(), cfg_.stopwords.begin(), cfg_.stopwords.end());
    std::sort(stopwords_.begin(), stopwords_.end());
    stopwords_.erase(std::unique(stopwords_.begin(), stopwords_.end()), stopwords_.end());
}

bool Preprocessor::is_protected(std::string_view token) const {
    return std::regex_search(token.begin(), token.end(), protected_);
}

bool Preprocessor::is_stopword(std::string_view word) const {
    return std::binary_search(stopwords_.begin(), stopwords_.end(), word);
}

std::vector<std::string> Preprocessor::operator()(std::string_view text) const {
    std::vector<std::string> out;
    for (auto& token : text::tokenize_preserving(text)) {
        if (is_protected(token)) {
            out.push_back(std::move(token));
            continue;
        }
        std::string word = cfg_.lowercase ? text::to_lower(token) : token;
        if (is_stopword(word)) continue;
        word = strip_noise(word);
        if (word.empty() || is_stopword(word)) continue;
        if (std::none_of(word.begin(), word.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); }))
            continue;
        if (cfg_.stemming == StemMode::Porter) word = text::porter_stem(word);
        out.push_back(std::move(word));
    }
    return out;
}

std::vector<std::string> preprocess(std::string_view text, const PreprocessConfig& cfg) {
    return Preprocessor(cfg)(text);
}

}  // namespace kgsec::classifier
