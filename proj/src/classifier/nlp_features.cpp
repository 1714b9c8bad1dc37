#include "kgsec/classifier/nlp_features.hpp"

#include "kgsec/text/pos_lexicon.hpp"
#include "kgsec/text/tokenize.hpp"

#include <cctype>

namespace kgsec::classifier {

NlpFeatureVector nlp_features(std::string_view text) {
    NlpFeatureVector f{};
    const auto words = text::split_whitespace(text);
    f[kWordCount] = static_cast<double>(words.size());

    std::size_t chars = 0;
    for (char c : text)
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++chars;
    f[kCharCount] = static_cast<double>(chars);

    for (const auto& w : words) {
        std::string_view core = w;
        while (!core.empty() && !std::isalnum(static_cast<unsigned char>(core.front()))) core.remove_prefix(1);
        while (!core.empty() && !std::isalnum(static_cast<unsigned char>(core.back()))) core.remove_suffix(1);
        switch (text::coarse_pos(text::to_lower(core))) {
            case text::CoarsePos::Noun: f[kNounCount] += 1; break;
            case text::CoarsePos::Verb: f[kVerbCount] += 1; break;
            case text::CoarsePos::Adjective: f[kAdjectiveCount] += 1; break;
            case text::CoarsePos::Adverb: f[kAdverbCount] += 1; break;
            case text::CoarsePos::Pronoun: f[kPronounCount] += 1; break;
            case text::CoarsePos::Other: break;
        }
    }
    f[kWordDensity] = f[kCharCount] / (f[kWordCount] + 1.0);
    return f;
}

}  // namespace kgsec::classifier
