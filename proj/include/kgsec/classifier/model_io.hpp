#pragma once

#include "kgsec/classifier/cross_validation.hpp"
#include "kgsec/classifier/dataset.hpp"
#include "kgsec/classifier/linear_model.hpp"
#include "kgsec/classifier/preprocess.hpp"
#include "kgsec/classifier/tfidf.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace kgsec::classifier {

inline constexpr int kModelFormatVersion = 1;

/// Everything needed to classify a raw sentence: preprocessing, the fitted
/// vectorizer and the linear model.
class ConceptModel {
public:
    ConceptModel(PreprocessConfig preprocess, FeatureConfig feature, std::optional<TfidfModel> tfidf,
                 LinearModel linear);

    /// Vector fed to the linear model. Nlp mode uses log1p-scaled dense features.
    SparseVector featurize(std::string_view text) const;
    Prediction classify(std::string_view text) const;

    const PreprocessConfig& preprocess_config() const { return preprocessor_->config(); }
    const FeatureConfig& feature_config() const { return feature_; }
    const std::optional<TfidfModel>& tfidf() const { return tfidf_; }
    const LinearModel& linear() const { return linear_; }

    bool operator==(const ConceptModel& other) const;

private:
    std::shared_ptr<const Preprocessor> preprocessor_;
    FeatureConfig feature_;
    std::optional<TfidfModel> tfidf_;
    LinearModel linear_;
};

/// Dense NLP features as a sparse vector of dimension 8 (log1p of each value).
SparseVector nlp_feature_vector(std::string_view text);

/// Fits the vectorizer and the linear model on `rows`.
ConceptModel train_concept_model(const std::vector<LabeledSentence>& rows, const PreprocessConfig& preprocess = {},
                                 const FeatureConfig& feature = {}, const TrainingHyper& hyper = {});

/// Stratified k-fold evaluation. The vectorizer is fitted on each training
/// fold only, so validation text never leaks into the vocabulary or idf.
CvReport cross_validate_concepts(const std::vector<LabeledSentence>& rows, std::size_t k, std::uint64_t seed,
                                 const PreprocessConfig& preprocess = {}, const FeatureConfig& feature = {},
                                 const TrainingHyper& hyper = {}, unsigned jobs = 1);

/// JSON model document. Throws ValidationError for an untrained model.
std::string model_to_json(const ConceptModel& model);
/// Throws LoadError on malformed, truncated, or version-mismatched input.
ConceptModel model_from_json(std::string_view text);

void save_model(const ConceptModel& model, const std::filesystem::path& path);
ConceptModel load_model(const std::filesystem::path& path);

}  // namespace kgsec::classifier
