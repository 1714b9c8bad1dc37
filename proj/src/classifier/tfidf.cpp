#include "kgsec/classifier/tfidf.hpp"

#include "kgsec/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace kgsec::classifier {

namespace {

std::vector<std::string_view> code_points(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t len = 1;
        const auto c = static_cast<unsigned char>(s[i]);
        if (c >= 0xF0) len = 4;
        else if (c >= 0xE0) len = 3;
        else if (c >= 0xC0) len = 2;
        len = std::min(len, s.size() - i);
        out.push_back(s.substr(i, len));
        i += len;
    }
    return out;
}

}  // namespace

std::string_view to_string(FeatureMode mode) {
    switch (mode) {
        case FeatureMode::Word: return "word";
        case FeatureMode::Char: return "char";
        case FeatureMode::WordChar: return "word+char";
        case FeatureMode::Nlp: return "nlp";
    }
    return "word+char";
}

FeatureMode parse_feature_mode(std::string_view text) {
    for (auto mode : {FeatureMode::Word, FeatureMode::Char, FeatureMode::WordChar, FeatureMode::Nlp})
        if (to_string(mode) == text) return mode;
    throw UsageError("unknown feature mode '" + std::string(text) + "' (expected word, char, word+char or nlp)");
}

double SparseVector::norm() const {
    double s = 0;
    for (const auto& [i, v] : entries) s += v * v;
    return std::sqrt(s);
}

double SparseVector::dot(std::span<const double> dense) const {
    double s = 0;
    for (const auto& [i, v] : entries) s += v * dense[i];
    return s;
}

std::vector<std::string> extract_terms(const std::vector<std::string>& tokens, const FeatureConfig& cfg) {
    const bool words = cfg.mode == FeatureMode::Word || cfg.mode == FeatureMode::WordChar;
    const bool chars = cfg.mode == FeatureMode::Char || cfg.mode == FeatureMode::WordChar;
    std::vector<std::string> terms;
    for (const auto& tok : tokens) {
        if (words) terms.push_back("w:" + tok);
        if (chars) {
            const auto cps = code_points(tok);
            for (int n = cfg.char_ngram_min; n <= cfg.char_ngram_max; ++n) {
                const auto un = static_cast<std::size_t>(n);
                for (std::size_t i = 0; i + un <= cps.size(); ++i) {
                    std::string gram = "c:";
                    for (std::size_t k = i; k < i + un; ++k) gram += cps[k];
                    terms.push_back(std::move(gram));
                }
            }
        }
    }
    return terms;
}

TfidfModel TfidfModel::fit(const std::vector<std::vector<std::string>>& token_lists, const FeatureConfig& cfg) {
    if (cfg.char_ngram_min != 2 || cfg.char_ngram_max != 4)
        throw ValidationError("character n-gram range is fixed to [2, 4]");
    std::map<std::string, std::size_t, std::less<>> df;
    for (const auto& tokens : token_lists) {
        const auto terms = extract_terms(tokens, cfg);
        for (const auto& t : std::set<std::string>(terms.begin(), terms.end())) ++df[t];
    }

    TfidfModel model;
    model.cfg_ = cfg;
    model.document_count_ = token_lists.size();
    const double n = static_cast<double>(token_lists.size());
    for (const auto& [term, count] : df) {
        if (count < cfg.min_df) continue;
        model.vocabulary_.emplace(term, static_cast<std::uint32_t>(model.idf_.size()));
        model.idf_.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
    }
    if (model.idf_.empty())
        throw ValidationError("TF-IDF fit needs at least one non-empty document (after min_df filtering)");
    return model;
}

SparseVector TfidfModel::transform(const std::vector<std::string>& tokens) const {
    std::map<std::uint32_t, double> counts;
    for (const auto& term : extract_terms(tokens, cfg_)) {
        auto it = vocabulary_.find(term);
        if (it != vocabulary_.end()) counts[it->second] += 1.0;
    }
    SparseVector v;
    v.dimension = idf_.size();
    double norm2 = 0;
    for (const auto& [idx, tf] : counts) {
        const double w = tf * idf_[idx];
        v.entries.emplace_back(idx, w);
        norm2 += w * w;
    }
    if (norm2 > 0) {
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& [idx, w] : v.entries) w *= inv;
    }
    return v;
}

TfidfModel TfidfModel::restore(FeatureConfig cfg, std::map<std::string, std::uint32_t, std::less<>> vocabulary,
                               std::vector<double> idf, std::size_t document_count) {
    if (vocabulary.size() != idf.size()) throw ValidationError("TF-IDF vocabulary and idf sizes differ");
    std::vector<bool> seen(idf.size(), false);
    for (const auto& [term, idx] : vocabulary) {
        if (idx >= idf.size() || seen[idx]) throw ValidationError("TF-IDF vocabulary indexes are not dense");
        seen[idx] = true;
    }
    for (double w : idf)
        if (!(w > 0) || !std::isfinite(w)) throw ValidationError("TF-IDF idf weights must be positive");
    TfidfModel m;
    m.cfg_ = cfg;
    m.vocabulary_ = std::move(vocabulary);
    m.idf_ = std::move(idf);
    m.document_count_ = document_count;
    return m;
}

void TfidfModel::scale_idf(double factor) {
    if (!(factor > 0)) throw ValidationError("idf scale factor must be positive");
    for (auto& w : idf_) w *= factor;
}

}  // namespace kgsec::classifier
