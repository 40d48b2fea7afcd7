#pragma once

#include <span>

namespace lfbo::classifiers {

/// Probabilities are clamped into [kProbFloor, 1 - kProbFloor] before any log.
inline constexpr double kProbFloor = 1e-6;
/// logit(1 - kProbFloor); pre-activations are clamped to +-kMaxLogit.
extern const double kMaxLogit;

double clamp_probability(double c);
double clamped_sigmoid(double logit);

/// -(1/n) sum_i [w_i log C_i + v_i log(1 - C_i)], with v_i = 1 when
/// `neg_weights` is empty. Throws DomainError if any C_i is outside (0,1).
double classification_loss(std::span<const double> probabilities, std::span<const double> pos_weights,
                           std::span<const double> neg_weights = {});

/// Per-sample loss and its derivative with respect to the (clamped) logit.
struct LogitLoss {
    double value;
    double dlogit;
};
LogitLoss logit_loss(double logit, double pos_weight, double neg_weight);

}  // namespace lfbo::classifiers
