#pragma once

#include "kgsec/classifier/metrics.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace kgsec::classifier {

struct Fold {
    std::vector<std::size_t> train;
    std::vector<std::size_t> validation;

    bool operator==(const Fold&) const = default;
};

/// Deterministic stratified split: each class is shuffled with a seeded
/// generator, classes are concatenated in label order, and the i-th index of
/// that sequence goes to fold i mod k. Per-fold class counts are therefore
/// floor or ceil of n_c / k. Throws ValidationError when k < 2 or a class has
/// fewer than k members.
std::vector<Fold> stratified_kfold(std::span<const std::string> labels, std::size_t k, std::uint64_t seed);

struct FoldReport {
    std::size_t fold = 0;
    std::size_t train_size = 0;
    std::size_t validation_size = 0;
    Metrics metrics;
};

struct CvReport {
    std::size_t k = 0;
    std::uint64_t seed = 0;
    std::string model;  // free-form description of the evaluated configuration
    std::vector<FoldReport> folds;
    double mean_mcc = 0;
    double mean_accuracy = 0;
    double mean_macro_f1 = 0;
};

/// Trains on `train` and returns predictions for `validation`, in order.
using FoldModel =
    std::function<std::vector<std::string>(std::span<const std::size_t> train, std::span<const std::size_t> validation)>;

/// Model-agnostic stratified k-fold harness. Folds run on up to `jobs` threads;
/// the report is identical for any job count.
CvReport cross_validate(std::span<const std::string> labels, std::size_t k, std::uint64_t seed,
                        const FoldModel& model, unsigned jobs = 1);

std::string cv_report_to_json(const CvReport& report);

/// Uniform integer in [0, bound) from a 64-bit engine by rejection sampling
/// (portable, unlike std::uniform_int_distribution).
std::uint64_t bounded_random(std::uint64_t& state, std::uint64_t bound);

}  // namespace kgsec::classifier
