#pragma once

#include <string_view>

namespace kgsec::text {

enum class CoarsePos { Noun, Verb, Adjective, Adverb, Pronoun, Other };

/// Coarse part of speech of a lowercase word: bundled lexicon first, then
/// suffix heuristics ("-ly" adverb, "-tion" noun, ...), then noun for any
/// remaining alphabetic word. Tokens without letters are Other.
CoarsePos coarse_pos(std::string_view word);

/// Number of entries in the bundled lexicon.
std::size_t pos_lexicon_size();

}  // namespace kgsec::text
