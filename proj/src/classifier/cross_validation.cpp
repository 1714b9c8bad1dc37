#include "kgsec/classifier/cross_validation.hpp"

#include "kgsec/error.hpp"
#include "kgsec/util/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>

namespace kgsec::classifier {

namespace {

// SplitMix64 step.
std::uint64_t next_random(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t bounded_random(std::uint64_t& state, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
        r = next_random(state);
    } while (r >= limit);
    return r % bound;
}

std::vector<Fold> stratified_kfold(std::span<const std::string> labels, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw ValidationError("stratified k-fold needs k >= 2 (got " + std::to_string(k) + ")");
    std::map<std::string, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
    for (const auto& [label, idx] : by_class)
        if (idx.size() < k)
            throw ValidationError("class '" + label + "' has " + std::to_string(idx.size()) + " samples, fewer than k=" +
                                  std::to_string(k));

    std::uint64_t state = seed;
    std::vector<std::size_t> order;
    for (auto& [label, idx] : by_class) {
        for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[bounded_random(state, i)]);
        order.insert(order.end(), idx.begin(), idx.end());
    }

    std::vector<std::size_t> fold_of(labels.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) fold_of[order[pos]] = pos % k;

    std::vector<Fold> folds(k);
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t f = 0; f < k; ++f) (f == fold_of[i] ? folds[f].validation : folds[f].train).push_back(i);
    return folds;
}

CvReport cross_validate(std::span<const std::string> labels, std::size_t k, std::uint64_t seed,
                        const FoldModel& model, unsigned jobs) {
    const auto folds = stratified_kfold(labels, k, seed);
    CvReport report;
    report.k = k;
    report.seed = seed;
    report.folds.resize(k);
    util::parallel_for(k, jobs, [&](std::size_t f) {
        const auto& fold = folds[f];
        const auto predicted = model(fold.train, fold.validation);
        if (predicted.size() != fold.validation.size())
            throw ValidationError("fold model returned the wrong number of predictions");
        std::vector<std::string> truth;
        for (auto i : fold.validation) truth.push_back(labels[i]);
        report.folds[f] = {f, fold.train.size(), fold.validation.size(), evaluate(truth, predicted)};
    });
    for (const auto& fr : report.folds) {
        report.mean_mcc += fr.metrics.mcc;
        report.mean_accuracy += fr.metrics.accuracy;
        report.mean_macro_f1 += fr.metrics.macro_f1;
    }
    report.mean_mcc /= static_cast<double>(k);
    report.mean_accuracy /= static_cast<double>(k);
    report.mean_macro_f1 /= static_cast<double>(k);
    return report;
}

std::string cv_report_to_json(const CvReport& report) {
    nlohmann::ordered_json j;
    j["k"] = report.k;
    j["seed"] = report.seed;
    j["model"] = report.model;
    j["mean_mcc"] = report.mean_mcc;
    j["mean_accuracy"] = report.mean_accuracy;
    j["mean_macro_f1"] = report.mean_macro_f1;
    j["folds"] = nlohmann::ordered_json::array();
    for (const auto& fr : report.folds) {
        nlohmann::ordered_json jf;
        jf["fold"] = fr.fold;
        jf["train_size"] = fr.train_size;
        jf["validation_size"] = fr.validation_size;
        jf["accuracy"] = fr.metrics.accuracy;
        jf["mcc"] = fr.metrics.mcc;
        jf["macro_precision"] = fr.metrics.macro_precision;
        jf["macro_recall"] = fr.metrics.macro_recall;
        jf["macro_f1"] = fr.metrics.macro_f1;
        jf["per_class"] = nlohmann::ordered_json::array();
        for (const auto& cm : fr.metrics.per_class)
            jf["per_class"].push_back({{"label", cm.label},
                                       {"precision", cm.precision},
                                       {"recall", cm.recall},
                                       {"f1", cm.f1},
                                       {"support", cm.support}});
        j["folds"].push_back(std::move(jf));
    }
    return j.dump(2) + "\n";
}

}  // namespace kgsec::classifier
