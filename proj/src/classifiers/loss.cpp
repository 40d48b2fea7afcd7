#include "lfbo/classifiers/loss.hpp"

#include <algorithm>
#include <cmath>

#include "lfbo/core/errors.hpp"

namespace lfbo::classifiers {

const double kMaxLogit = std::log((1.0 - kProbFloor) / kProbFloor);

double clamp_probability(double c) { return std::clamp(c, kProbFloor, 1.0 - kProbFloor); }

double clamped_sigmoid(double logit) {
    if (logit <= -kMaxLogit) return kProbFloor;
    if (logit >= kMaxLogit) return 1.0 - kProbFloor;
    return clamp_probability(1.0 / (1.0 + std::exp(-logit)));
}

double classification_loss(std::span<const double> probabilities, std::span<const double> pos_weights,
                           std::span<const double> neg_weights) {
    if (probabilities.size() != pos_weights.size() || (!neg_weights.empty() && neg_weights.size() != pos_weights.size()))
        throw InvalidArgument("classification_loss: length mismatch");
    if (probabilities.empty()) throw InvalidArgument("classification_loss: no samples");
    double total = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        const double c = probabilities[i];
        if (!(c > 0.0 && c < 1.0)) throw DomainError("classifier output must lie strictly inside (0,1)");
        const double cc = clamp_probability(c);
        const double v = neg_weights.empty() ? 1.0 : neg_weights[i];
        total += pos_weights[i] * std::log(cc) + v * std::log1p(-cc);
    }
    return -total / static_cast<double>(probabilities.size());
}

LogitLoss logit_loss(double logit, double pos_weight, double neg_weight) {
    const bool clamped = logit > kMaxLogit || logit < -kMaxLogit;
    const double z = std::clamp(logit, -kMaxLogit, kMaxLogit);
    // log C = -softplus(-z), log(1 - C) = -softplus(z)
    const double sp_pos = z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
    const double sp_neg = sp_pos - z;
    const double c = 1.0 / (1.0 + std::exp(-z));
    const double value = pos_weight * sp_neg + neg_weight * sp_pos;
    const double d = clamped ? 0.0 : -pos_weight * (1.0 - c) + neg_weight * c;
    return {value, d};
}

}  // namespace lfbo::classifiers
