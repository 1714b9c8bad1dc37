#pragma once

#include "kgsec/classifier/features.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace kgsec::classifier {

/// Logistic-regression settings; defaults are the tuned values C = 2.60,
/// max_iter = 582, tol = 9.95e-5.
struct TrainingHyper {
    double C = 2.60;
    std::size_t max_iter = 582;
    double tol = 9.95e-5;
    std::uint64_t seed = 42;

    bool operator==(const TrainingHyper&) const = default;
};

struct ClassWeights {
    std::string label;
    std::vector<double> weights;
    double bias = 0;
    std::size_t iterations = 0;
    double final_gradient_norm = 0;

    bool operator==(const ClassWeights&) const = default;
};

struct Prediction {
    std::string label;
    std::vector<std::pair<std::string, double>> scores;  // raw sigmoid score per class
    double confidence = 0;                               // score of the predicted label
};

/// One-vs-rest linear model. Classes are kept in lexicographic order, which is
/// also the tie-break order of predict().
struct LinearModel {
    std::size_t dimension = 0;
    std::vector<ClassWeights> classes;
    TrainingHyper hyper;

    bool trained() const { return !classes.empty(); }
    /// Throws ValidationError on a dimension mismatch.
    Prediction predict(const SparseVector& x) const;

    bool operator==(const LinearModel&) const = default;
};

/// Binary subproblem of one class against the rest (labels +1 / -1).
struct BinaryProblem {
    std::span<const SparseVector> samples;
    std::vector<double> targets;
    double C = 2.60;
    std::size_t dimension = 0;
};

/// (1/C) * 0.5 * ||w||^2 + sum_i log(1 + exp(-y_i (w . x_i + b))); the bias is not regularized.
double objective(const BinaryProblem& problem, std::span<const double> w, double b);

/// Analytic gradient of objective(); grad_w is resized to the dimension.
void gradient(const BinaryProblem& problem, std::span<const double> w, double b, std::vector<double>& grad_w,
              double& grad_b);

/// Batch gradient descent with backtracking line search from zero weights.
/// Stops when the gradient norm drops to hyper.tol or after hyper.max_iter steps.
ClassWeights fit_binary(const BinaryProblem& problem, const TrainingHyper& hyper);

/// Trains one binary model per distinct label. Throws ValidationError for
/// fewer than two classes, an empty feature space, or mismatched sizes.
LinearModel train(std::span<const SparseVector> features, std::span<const std::string> labels,
                  const TrainingHyper& hyper = {});

double sigmoid(double z);

}  // namespace kgsec::classifier
