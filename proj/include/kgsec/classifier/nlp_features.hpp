#pragma once

#include <array>
#include <string_view>

namespace kgsec::classifier {

/// Order of the dense NLP feature vector.
enum NlpFeature : std::size_t {
    kWordCount,
    kCharCount,
    kNounCount,
    kVerbCount,
    kAdjectiveCount,
    kAdverbCount,
    kPronounCount,
    kWordDensity,
};

using NlpFeatureVector = std::array<double, 8>;

/// Whitespace word count, UTF-8 character count, coarse part-of-speech counts
/// from the bundled lexicon, and word density = characters / (words + 1).
NlpFeatureVector nlp_features(std::string_view text);

}  // namespace kgsec::classifier
