#pragma once

#include <span>
#include <string>
#include <vector>

#include "lfbo/core/dataset.hpp"

namespace lfbo {

/// Non-negative utility u(y; tau) whose expectation defines an acquisition.
///   PI:        1[y > tau]
///   EI:        max(y - tau, 0)
///   Power(l):  (y - tau)^l for y > tau, else 0
class Utility {
public:
    enum class Kind { PI, EI, Power };

    static Utility pi() { return Utility(Kind::PI, 0.0); }
    static Utility ei() { return Utility(Kind::EI, 1.0); }
    /// Throws InvalidArgument unless lambda is finite and >= 0.
    static Utility power(double lambda);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double lambda() const noexcept { return lambda_; }
    [[nodiscard]] std::string name() const;

    [[nodiscard]] double operator()(double y, double tau) const;

    friend bool operator==(const Utility&, const Utility&) = default;

private:
    Utility(Kind kind, double lambda) : kind_(kind), lambda_(lambda) {}
    Kind kind_;
    double lambda_;
};

double eval_utility(const Utility& u, double y, double tau);

/// tau is the (1 - gamma) empirical quantile of the observed outcomes.
struct ThresholdPolicy {
    double gamma = 1.0 / 3.0;
};

/// Linear-interpolation quantile at position q*(n-1) of the sorted values.
double empirical_quantile(std::span<const double> values, double q);

double select_threshold(const Dataset& ds, const ThresholdPolicy& policy);
double select_threshold(std::span<const double> outcomes, const ThresholdPolicy& policy);

/// weight_i = u(y_i; tau). With `normalize`, positive weights are rescaled to
/// mean one (zeros untouched).
std::vector<double> build_weights(std::span<const double> outcomes, const Utility& u, double tau,
                                  bool normalize);
std::vector<double> build_weights(const Dataset& ds, const Utility& u, double tau, bool normalize);

}  // namespace lfbo
