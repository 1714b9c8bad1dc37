#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace kgsec::classifier {

/// The four sentence concepts, in lexicographic order.
inline constexpr std::array<std::string_view, 4> kConceptLabels{"action", "goal", "other", "statement"};

bool is_concept_label(std::string_view label);

struct LabeledSentence {
    std::string text;
    std::string label;

    bool operator==(const LabeledSentence&) const = default;
};

/// RFC 4180 CSV with header "text,label". Throws ParseError on malformed
/// quoting and ValidationError on a wrong header or unknown label.
std::vector<LabeledSentence> parse_labeled_csv(std::string_view text);
std::vector<LabeledSentence> load_labeled_dataset(const std::filesystem::path& path);
std::string to_labeled_csv(const std::vector<LabeledSentence>& rows);

/// Generic RFC 4180 record reader used by the dataset loader.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace kgsec::classifier
