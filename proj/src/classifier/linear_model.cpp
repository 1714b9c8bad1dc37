#include "kgsec/classifier/linear_model.hpp"

#include "kgsec/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace kgsec::classifier {

namespace {

// log(1 + exp(-m)) without overflow.
double logistic_loss(double margin) {
    return margin > 0 ? std::log1p(std::exp(-margin)) : -margin + std::log1p(std::exp(margin));
}

double dot_dense(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double objective(const BinaryProblem& p, std::span<const double> w, double b) {
    double f = 0.5 * dot_dense(w, w) / p.C;
    for (std::size_t i = 0; i < p.samples.size(); ++i)
        f += logistic_loss(p.targets[i] * (p.samples[i].dot(w) + b));
    return f;
}

void gradient(const BinaryProblem& p, std::span<const double> w, double b, std::vector<double>& grad_w,
              double& grad_b) {
    grad_w.assign(p.dimension, 0.0);
    for (std::size_t j = 0; j < p.dimension; ++j) grad_w[j] = w[j] / p.C;
    grad_b = 0;
    for (std::size_t i = 0; i < p.samples.size(); ++i) {
        const double y = p.targets[i];
        const double coef = -y * sigmoid(-y * (p.samples[i].dot(w) + b));
        for (const auto& [idx, v] : p.samples[i].entries) grad_w[idx] += coef * v;
        grad_b += coef;
    }
}

ClassWeights fit_binary(const BinaryProblem& p, const TrainingHyper& hyper) {
    constexpr double kArmijo = 1e-4;
    const std::size_t n = p.samples.size();
    ClassWeights out;
    out.weights.assign(p.dimension, 0.0);
    double& b = out.bias;
    auto& w = out.weights;

    std::vector<double> margin(n, 0.0);  // w . x_i + b
    std::vector<double> direction(n);     // g_w . x_i + g_b
    std::vector<double> gw;
    double gb = 0;
    double step = 1.0;

    auto loss_at = [&](double t, double reg) {
        double f = reg;
        for (std::size_t i = 0; i < n; ++i) f += logistic_loss(p.targets[i] * (margin[i] - t * direction[i]));
        return f;
    };

    std::size_t iter = 0;
    for (; iter < hyper.max_iter; ++iter) {
        gw.assign(p.dimension, 0.0);
        for (std::size_t j = 0; j < p.dimension; ++j) gw[j] = w[j] / p.C;
        gb = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double y = p.targets[i];
            const double coef = -y * sigmoid(-y * margin[i]);
            for (const auto& [idx, v] : p.samples[i].entries) gw[idx] += coef * v;
            gb += coef;
        }
        const double gnorm2 = dot_dense(gw, gw) + gb * gb;
        out.final_gradient_norm = std::sqrt(gnorm2);
        if (out.final_gradient_norm <= hyper.tol) break;

        for (std::size_t i = 0; i < n; ++i) direction[i] = p.samples[i].dot(gw) + gb;
        const double ww = dot_dense(w, w), wg = dot_dense(w, gw), gg = dot_dense(gw, gw);
        auto reg_at = [&](double t) { return 0.5 * (ww - 2 * t * wg + t * t * gg) / p.C; };

        const double f0 = loss_at(0.0, reg_at(0.0));
        step = std::min(step * 2.0, 1e6);
        while (loss_at(step, reg_at(step)) > f0 - kArmijo * step * gnorm2 && step > 1e-12) step *= 0.5;

        for (std::size_t j = 0; j < p.dimension; ++j) w[j] -= step * gw[j];
        b -= step * gb;
        for (std::size_t i = 0; i < n; ++i) margin[i] -= step * direction[i];
    }
    out.iterations = iter;
    return out;
}

LinearModel train(std::span<const SparseVector> features, std::span<const std::string> labels,
                  const TrainingHyper& hyper) {
    if (features.size() != labels.size()) throw ValidationError("feature and label counts differ");
    if (features.empty()) throw ValidationError("cannot train on an empty dataset");
    const std::size_t dim = features.front().dimension;
    if (dim == 0) throw ValidationError("feature dimension must be positive");
    for (const auto& x : features)
        if (x.dimension != dim) throw ValidationError("inconsistent feature dimensions");
    if (!(hyper.C > 0)) throw ValidationError("regularization strength C must be positive");

    const std::set<std::string> classes(labels.begin(), labels.end());
    if (classes.size() < 2) throw ValidationError("training data must contain at least two classes");

    LinearModel model;
    model.dimension = dim;
    model.hyper = hyper;
    for (const auto& label : classes) {
        BinaryProblem problem{features, {}, hyper.C, dim};
        problem.targets.reserve(labels.size());
        for (const auto& l : labels) problem.targets.push_back(l == label ? 1.0 : -1.0);
        auto cw = fit_binary(problem, hyper);
        cw.label = label;
        model.classes.push_back(std::move(cw));
    }
    return model;
}

Prediction LinearModel::predict(const SparseVector& x) const {
    if (!trained()) throw ValidationError("model is not trained");
    if (x.dimension != dimension)
        throw ValidationError("feature vector dimension " + std::to_string(x.dimension) + " does not match model " +
                              std::to_string(dimension));
    Prediction p;
    double best = -1;
    for (const auto& cw : classes) {
        const double score = sigmoid(x.dot(cw.weights) + cw.bias);
        p.scores.emplace_back(cw.label, score);
        if (score > best) {
            best = score;
            p.label = cw.label;
        }
    }
    p.confidence = best;
    return p;
}

}  // namespace kgsec::classifier
