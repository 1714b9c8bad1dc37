#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kgsec::classifier {

enum class FeatureMode { Word, Char, WordChar, Nlp };

std::string_view to_string(FeatureMode mode);
FeatureMode parse_feature_mode(std::string_view text);  // throws UsageError

struct FeatureConfig {
    FeatureMode mode = FeatureMode::WordChar;
    // Fixed range; loading a model with any other range fails validation.
    int char_ngram_min = 2;
    int char_ngram_max = 4;
    std::size_t min_df = 1;

    bool operator==(const FeatureConfig&) const = default;
};

/// Sparse vector with strictly increasing indices.
struct SparseVector {
    std::size_t dimension = 0;
    std::vector<std::pair<std::uint32_t, double>> entries;

    double norm() const;
    double dot(std::span<const double> dense) const;

    bool operator==(const SparseVector&) const = default;
};

}  // namespace kgsec::classifier
