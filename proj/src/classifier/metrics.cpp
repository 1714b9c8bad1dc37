#include "kgsec/classifier/metrics.hpp"

#include "kgsec/error.hpp"

#include <cmath>
#include <map>
#include <set>

namespace kgsec::classifier {

namespace {

void check_lengths(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.size() != b.size())
        throw ValidationError("label sequences differ in length (" + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()) + ")");
    if (a.empty()) throw ValidationError("label sequences are empty");
}

struct Confusion {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> counts;  // [truth][predicted]
};

Confusion confusion(const std::vector<std::string>& truth, const std::vector<std::string>& pred) {
    std::set<std::string> all(truth.begin(), truth.end());
    all.insert(pred.begin(), pred.end());
    Confusion c;
    c.labels.assign(all.begin(), all.end());
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < c.labels.size(); ++i) index[c.labels[i]] = i;
    c.counts.assign(c.labels.size(), std::vector<double>(c.labels.size(), 0.0));
    for (std::size_t i = 0; i < truth.size(); ++i) c.counts[index[truth[i]]][index[pred[i]]] += 1;
    return c;
}

double safe_div(double num, double den) { return den == 0 ? 0.0 : num / den; }

}  // namespace

double matthews_corrcoef(const std::vector<std::string>& truth, const std::vector<std::string>& predicted) {
    check_lengths(truth, predicted);
    const auto c = confusion(truth, predicted);
    const std::size_t k = c.labels.size();
    double correct = 0, samples = 0;
    std::vector<double> t(k, 0.0), p(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        correct += c.counts[i][i];
        for (std::size_t j = 0; j < k; ++j) {
            t[i] += c.counts[i][j];
            p[j] += c.counts[i][j];
            samples += c.counts[i][j];
        }
    }
    double pt = 0, pp = 0, tt = 0;
    for (std::size_t i = 0; i < k; ++i) {
        pt += p[i] * t[i];
        pp += p[i] * p[i];
        tt += t[i] * t[i];
    }
    const double den = (samples * samples - pp) * (samples * samples - tt);
    if (den <= 0) return 0.0;
    return (correct * samples - pt) / std::sqrt(den);
}

Metrics evaluate(const std::vector<std::string>& truth, const std::vector<std::string>& predicted) {
    check_lengths(truth, predicted);
    const auto c = confusion(truth, predicted);
    Metrics m;
    double correct = 0;
    for (std::size_t i = 0; i < c.labels.size(); ++i) {
        double tp = c.counts[i][i], row = 0, col = 0;
        for (std::size_t j = 0; j < c.labels.size(); ++j) {
            row += c.counts[i][j];
            col += c.counts[j][i];
        }
        correct += tp;
        ClassMetrics cm;
        cm.label = c.labels[i];
        cm.precision = safe_div(tp, col);
        cm.recall = safe_div(tp, row);
        cm.f1 = safe_div(2 * cm.precision * cm.recall, cm.precision + cm.recall);
        cm.support = static_cast<std::size_t>(row);
        m.macro_precision += cm.precision;
        m.macro_recall += cm.recall;
        m.macro_f1 += cm.f1;
        m.per_class.push_back(cm);
    }
    const double k = static_cast<double>(m.per_class.size());
    m.macro_precision /= k;
    m.macro_recall /= k;
    m.macro_f1 /= k;
    m.accuracy = correct / static_cast<double>(truth.size());
    m.mcc = matthews_corrcoef(truth, predicted);
    return m;
}

double cohen_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    check_lengths(a, b);
    const auto c = confusion(a, b);
    const double n = static_cast<double>(a.size());
    double observed = 0, expected = 0;
    for (std::size_t i = 0; i < c.labels.size(); ++i) {
        observed += c.counts[i][i];
        double row = 0, col = 0;
        for (std::size_t j = 0; j < c.labels.size(); ++j) {
            row += c.counts[i][j];
            col += c.counts[j][i];
        }
        expected += (row / n) * (col / n);
    }
    observed /= n;
    if (expected >= 1.0) return observed >= 1.0 ? 1.0 : 0.0;
    return (observed - expected) / (1.0 - expected);
}

}  // namespace kgsec::classifier
