#pragma once

#include "kgsec/classifier/features.hpp"

#include <map>
#include <string>
#include <vector>

namespace kgsec::classifier {

/// Prefixed terms for a token list: "w:" + token in word modes and "c:" +
/// n-gram for every within-token character n-gram (2..4 code points) in char modes.
std::vector<std::string> extract_terms(const std::vector<std::string>& tokens, const FeatureConfig& cfg);

/// Vocabulary and smoothed idf weights; idf(t) = ln((1 + N) / (1 + df(t))) + 1.
class TfidfModel {
public:
    /// Throws ValidationError when no document yields a term (or min_df removes all of them).
    static TfidfModel fit(const std::vector<std::vector<std::string>>& token_lists, const FeatureConfig& cfg);

    /// Raw-count tf times idf, L2-normalized; out-of-vocabulary terms ignored.
    SparseVector transform(const std::vector<std::string>& tokens) const;

    std::size_t dimension() const { return idf_.size(); }
    const std::map<std::string, std::uint32_t, std::less<>>& vocabulary() const { return vocabulary_; }
    const std::vector<double>& idf() const { return idf_; }
    std::size_t document_count() const { return document_count_; }
    const FeatureConfig& config() const { return cfg_; }

    /// Rebuilds a fitted model from stored parts; validates density and positivity.
    static TfidfModel restore(FeatureConfig cfg, std::map<std::string, std::uint32_t, std::less<>> vocabulary,
                              std::vector<double> idf, std::size_t document_count);

    /// Scales every idf weight by a positive factor (used by invariance checks).
    void scale_idf(double factor);

    bool operator==(const TfidfModel&) const = default;

private:
    FeatureConfig cfg_;
    std::map<std::string, std::uint32_t, std::less<>> vocabulary_;
    std::vector<double> idf_;
    std::size_t document_count_ = 0;
};

}  // namespace kgsec::classifier
