#pragma once

#include <string>
#include <vector>

namespace kgsec::classifier {

struct ClassMetrics {
    std::string label;
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    std::size_t support = 0;  // occurrences in the truth sequence
};

struct Metrics {
    double accuracy = 0;
    std::vector<ClassMetrics> per_class;  // classes seen in either sequence, sorted
    double macro_precision = 0;
    double macro_recall = 0;
    double macro_f1 = 0;
    double mcc = 0;
};

/// Accuracy, per-class precision/recall/F1 (0 when undefined), their macro
/// averages, and the multi-class Matthews correlation. Throws ValidationError
/// on length mismatch or empty input.
Metrics evaluate(const std::vector<std::string>& truth, const std::vector<std::string>& predicted);

/// Generalized (K-class) Matthews correlation from the confusion matrix;
/// 0 when a denominator factor vanishes.
double matthews_corrcoef(const std::vector<std::string>& truth, const std::vector<std::string>& predicted);

/// Cohen's kappa (p_o - p_e) / (1 - p_e); 1 when both agreements are 1.
double cohen_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b);

}  // namespace kgsec::classifier
