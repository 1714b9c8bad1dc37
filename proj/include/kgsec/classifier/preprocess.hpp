#pragma once

#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace kgsec::classifier {

enum class StemMode { None, Porter };

/// Default protected-token pattern: leading dashes, camelCase, dotted or
/// underscored identifiers, and all-caps acronyms such as RBAC.
inline constexpr std::string_view kDefaultProtectedPattern =
    R"(^-{1,2}[A-Za-z0-9]|[a-z][A-Z]|[A-Za-z0-9][._/][A-Za-z0-9]|^[A-Z][A-Z0-9]+$)";

struct PreprocessConfig {
    bool lowercase = true;
    std::vector<std::string> stopwords;  // added to the bundled list when enabled
    bool use_bundled_stopwords = true;
    StemMode stemming = StemMode::Porter;
    std::string protected_pattern{kDefaultProtectedPattern};

    bool operator==(const PreprocessConfig&) const = default;
};

/// Compiled form of a PreprocessConfig. Immutable and safe to share.
class Preprocessor {
public:
    explicit Preprocessor(PreprocessConfig cfg = {});

    std::vector<std::string> operator()(std::string_view text) const;
    bool is_protected(std::string_view token) const;
    const PreprocessConfig& config() const { return cfg_; }

private:
    bool is_stopword(std::string_view word) const;

    PreprocessConfig cfg_;
    std::regex protected_;
    std::vector<std::string> stopwords_;  // sorted
};

/// Protected tokens pass through verbatim; other tokens are lowercased,
/// stripped of punctuation, filtered against the stop-word list, and stemmed.
std::vector<std::string> preprocess(std::string_view text, const PreprocessConfig& cfg = {});

}  // namespace kgsec::classifier
