#pragma once

#include "kgsec/corpus/document.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace kgsec::corpus {

struct Sentence {
    std::string doc_id;
    std::size_t index = 0;
    std::string text;

    bool operator==(const Sentence&) const = default;
};

/// Rule-based segmentation. Blank lines end a sentence. Otherwise a split
/// happens after '.', '!' or '?' followed by whitespace and a capital letter,
/// quote, or dash, except after e.g./i.e./etc./vs./cf. and after a mid-sentence
/// initial such as "F.". Sentences are trimmed, whitespace-collapsed, and never empty.
std::vector<Sentence> split_sentences(std::string_view text, std::string_view doc_id = {});

/// Visible text of a document (HTML markup removed, other formats verbatim).
std::string document_text(const RawDocument& doc);

}  // namespace kgsec::corpus
