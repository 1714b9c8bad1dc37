#include "kgsec/classifier/model_io.hpp"

#include "kgsec/classifier/nlp_features.hpp"
#include "kgsec/error.hpp"
#include "kgsec/util/files.hpp"

#include <json.hpp>

#include <cmath>

namespace kgsec::classifier {

using nlohmann::ordered_json;

namespace {

std::string_view stem_name(StemMode m) { return m == StemMode::Porter ? "porter" : "none"; }

StemMode parse_stem(const std::string& s) {
    if (s == "porter") return StemMode::Porter;
    if (s == "none") return StemMode::None;
    throw LoadError("unknown stemming mode '" + s + "'");
}

std::vector<std::vector<std::string>> tokenize_all(const Preprocessor& pre, const std::vector<LabeledSentence>& rows,
                                                   std::span<const std::size_t> subset) {
    std::vector<std::vector<std::string>> out;
    out.reserve(subset.size());
    for (auto i : subset) out.push_back(pre(rows[i].text));
    return out;
}

}  // namespace

SparseVector nlp_feature_vector(std::string_view text) {
    const auto f = nlp_features(text);
    SparseVector v;
    v.dimension = f.size();
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] != 0) v.entries.emplace_back(static_cast<std::uint32_t>(i), std::log1p(f[i]));
    return v;
}

ConceptModel::ConceptModel(PreprocessConfig preprocess, FeatureConfig feature, std::optional<TfidfModel> tfidf,
                           LinearModel linear)
    : preprocessor_(std::make_shared<const Preprocessor>(std::move(preprocess))),
      feature_(feature),
      tfidf_(std::move(tfidf)),
      linear_(std::move(linear)) {
    if (feature_.mode != FeatureMode::Nlp && !tfidf_)
        throw ValidationError("a text feature mode needs a fitted vectorizer");
}

SparseVector ConceptModel::featurize(std::string_view text) const {
    if (feature_.mode == FeatureMode::Nlp) return nlp_feature_vector(text);
    return tfidf_->transform((*preprocessor_)(text));
}

Prediction ConceptModel::classify(std::string_view text) const { return linear_.predict(featurize(text)); }

bool ConceptModel::operator==(const ConceptModel& other) const {
    return preprocess_config() == other.preprocess_config() && feature_ == other.feature_ && tfidf_ == other.tfidf_ &&
           linear_ == other.linear_;
}

namespace {

ConceptModel fit_subset(const std::vector<LabeledSentence>& rows, std::span<const std::size_t> subset,
                        const PreprocessConfig& preprocess, const FeatureConfig& feature, const TrainingHyper& hyper) {
    Preprocessor pre(preprocess);
    std::vector<SparseVector> x;
    std::vector<std::string> y;
    std::optional<TfidfModel> tfidf;
    if (feature.mode == FeatureMode::Nlp) {
        for (auto i : subset) x.push_back(nlp_feature_vector(rows[i].text));
    } else {
        const auto tokens = tokenize_all(pre, rows, subset);
        tfidf = TfidfModel::fit(tokens, feature);
        for (const auto& t : tokens) x.push_back(tfidf->transform(t));
    }
    for (auto i : subset) y.push_back(rows[i].label);
    auto linear = train(x, y, hyper);
    return ConceptModel(preprocess, feature, std::move(tfidf), std::move(linear));
}

}  // namespace

ConceptModel train_concept_model(const std::vector<LabeledSentence>& rows, const PreprocessConfig& preprocess,
                                 const FeatureConfig& feature, const TrainingHyper& hyper) {
    if (rows.empty()) throw ValidationError("cannot train on an empty dataset");
    std::vector<std::size_t> all(rows.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return fit_subset(rows, all, preprocess, feature, hyper);
}

CvReport cross_validate_concepts(const std::vector<LabeledSentence>& rows, std::size_t k, std::uint64_t seed,
                                 const PreprocessConfig& preprocess, const FeatureConfig& feature,
                                 const TrainingHyper& hyper, unsigned jobs) {
    std::vector<std::string> labels;
    for (const auto& r : rows) labels.push_back(r.label);
    auto report = cross_validate(
        labels, k, seed,
        [&](std::span<const std::size_t> train_idx, std::span<const std::size_t> validation) {
            const auto model = fit_subset(rows, train_idx, preprocess, feature, hyper);
            std::vector<std::string> predicted;
            for (auto i : validation) predicted.push_back(model.classify(rows[i].text).label);
            return predicted;
        },
        jobs);
    report.model = "lr+" + std::string(to_string(feature.mode));
    return report;
}

std::string model_to_json(const ConceptModel& model) {
    if (!model.linear().trained()) throw ValidationError("cannot save an untrained model");
    ordered_json j;
    j["format_version"] = kModelFormatVersion;

    const auto& pc = model.preprocess_config();
    j["preprocess"] = {{"lowercase", pc.lowercase},
                       {"stopwords", pc.stopwords},
                       {"use_bundled_stopwords", pc.use_bundled_stopwords},
                       {"stemming", stem_name(pc.stemming)},
                       {"protected_pattern", pc.protected_pattern}};

    const auto& fc = model.feature_config();
    j["feature"] = {{"mode", to_string(fc.mode)},
                    {"char_ngram_min", fc.char_ngram_min},
                    {"char_ngram_max", fc.char_ngram_max},
                    {"min_df", fc.min_df}};

    if (const auto& tf = model.tfidf()) {
        std::vector<std::string> terms(tf->dimension());
        for (const auto& [term, idx] : tf->vocabulary()) terms[idx] = term;
        j["tfidf"] = {{"document_count", tf->document_count()}, {"terms", terms}, {"idf", tf->idf()}};
    } else {
        j["tfidf"] = nullptr;
    }

    const auto& lin = model.linear();
    ordered_json jl;
    jl["dimension"] = lin.dimension;
    jl["hyper"] = {{"C", lin.hyper.C}, {"max_iter", lin.hyper.max_iter}, {"tol", lin.hyper.tol}, {"seed", lin.hyper.seed}};
    jl["classes"] = ordered_json::array();
    for (const auto& c : lin.classes)
        jl["classes"].push_back({{"label", c.label},
                                 {"bias", c.bias},
                                 {"iterations", c.iterations},
                                 {"final_gradient_norm", c.final_gradient_norm},
                                 {"weights", c.weights}});
    j["linear"] = std::move(jl);
    return j.dump() + "\n";
}

ConceptModel model_from_json(std::string_view text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw LoadError(std::string("model file is not valid JSON: ") + e.what());
    }
    try {
        if (!j.is_object() || !j.contains("format_version")) throw LoadError("model file has no format_version");
        const int version = j.at("format_version").get<int>();
        if (version != kModelFormatVersion)
            throw LoadError("unsupported model format_version " + std::to_string(version) + " (expected " +
                            std::to_string(kModelFormatVersion) + ")");

        const auto& jp = j.at("preprocess");
        PreprocessConfig pc;
        pc.lowercase = jp.at("lowercase").get<bool>();
        pc.stopwords = jp.at("stopwords").get<std::vector<std::string>>();
        pc.use_bundled_stopwords = jp.at("use_bundled_stopwords").get<bool>();
        pc.stemming = parse_stem(jp.at("stemming").get<std::string>());
        pc.protected_pattern = jp.at("protected_pattern").get<std::string>();

        const auto& jf = j.at("feature");
        FeatureConfig fc;
        fc.mode = parse_feature_mode(jf.at("mode").get<std::string>());
        fc.char_ngram_min = jf.at("char_ngram_min").get<int>();
        fc.char_ngram_max = jf.at("char_ngram_max").get<int>();
        fc.min_df = jf.at("min_df").get<std::size_t>();
        if (fc.char_ngram_min != 2 || fc.char_ngram_max != 4)
            throw LoadError("character n-gram range must be [2, 4]");

        std::optional<TfidfModel> tfidf;
        const auto& jt = j.at("tfidf");
        if (!jt.is_null()) {
            const auto terms = jt.at("terms").get<std::vector<std::string>>();
            std::map<std::string, std::uint32_t, std::less<>> vocab;
            for (std::size_t i = 0; i < terms.size(); ++i)
                if (!vocab.emplace(terms[i], static_cast<std::uint32_t>(i)).second)
                    throw LoadError("duplicate vocabulary term '" + terms[i] + "'");
            tfidf = TfidfModel::restore(fc, std::move(vocab), jt.at("idf").get<std::vector<double>>(),
                                        jt.at("document_count").get<std::size_t>());
        }

        const auto& jl = j.at("linear");
        LinearModel lin;
        lin.dimension = jl.at("dimension").get<std::size_t>();
        const auto& jh = jl.at("hyper");
        lin.hyper.C = jh.at("C").get<double>();
        lin.hyper.max_iter = jh.at("max_iter").get<std::size_t>();
        lin.hyper.tol = jh.at("tol").get<double>();
        lin.hyper.seed = jh.at("seed").get<std::uint64_t>();
        for (const auto& jc : jl.at("classes")) {
            ClassWeights c;
            c.label = jc.at("label").get<std::string>();
            c.bias = jc.at("bias").get<double>();
            c.iterations = jc.at("iterations").get<std::size_t>();
            c.final_gradient_norm = jc.at("final_gradient_norm").get<double>();
            c.weights = jc.at("weights").get<std::vector<double>>();
            if (c.weights.size() != lin.dimension) throw LoadError("weight vector of '" + c.label + "' has wrong size");
            lin.classes.push_back(std::move(c));
        }
        if (lin.classes.size() < 2) throw LoadError("model must contain at least two classes");
        const std::size_t expected_dim = tfidf ? tfidf->dimension() : NlpFeatureVector{}.size();
        if (lin.dimension != expected_dim) throw LoadError("model dimension does not match its feature space");

        return ConceptModel(std::move(pc), fc, std::move(tfidf), std::move(lin));
    } catch (const LoadError&) {
        throw;
    } catch (const nlohmann::json::exception& e) {
        throw LoadError(std::string("model file is incomplete or mistyped: ") + e.what());
    } catch (const Error& e) {
        throw LoadError(std::string("model file is invalid: ") + e.what());
    } catch (const std::regex_error& e) {
        throw LoadError(std::string("model file has an invalid protected pattern: ") + e.what());
    }
}

void save_model(const ConceptModel& model, const std::filesystem::path& path) {
    util::write_file(path, model_to_json(model));
}

ConceptModel load_model(const std::filesystem::path& path) { return model_from_json(util::read_file(path)); }

}  // namespace kgsec::classifier
