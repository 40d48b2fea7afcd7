#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "lfbo/core/dataset.hpp"
#include "lfbo/oracles/gaussian.hpp"

namespace lfbo::oracles {

struct GpHyperparams {
    /// In normalized input units (each dim scaled to [0,1]).
    double length_scale = 1.0;
    double signal_variance = 1.0;
    double noise_variance = 1e-4;
    double prior_mean = 0.0;
};

/// Matern-5/2 correlation at scaled distance r = |x - x'| / length_scale.
double matern52(double r);

/// Exact GP posterior with a Matern-5/2 kernel.
class GpModel {
public:
    struct Prediction {
        double mean;
        double variance;
    };

    [[nodiscard]] Prediction predict(const Point& x) const;
    [[nodiscard]] double log_marginal_likelihood() const;
    [[nodiscard]] const GpHyperparams& hyperparams() const noexcept { return hp_; }
    [[nodiscard]] double jitter() const noexcept { return jitter_; }
    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(X_.cols()); }

    /// Kernel between two raw points of this model's space.
    [[nodiscard]] double kernel(const Point& a, const Point& b) const;

    friend GpModel gp_fit(const Dataset& ds, const GpHyperparams& hp);

private:
    GpModel(SearchSpace space, GpHyperparams hp) : space_(std::move(space)), hp_(hp) {}
    [[nodiscard]] Eigen::VectorXd encode(const Point& x) const;
    [[nodiscard]] double kernel_encoded(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

    SearchSpace space_;
    GpHyperparams hp_;
    Eigen::MatrixXd X_;  // encoded inputs, one column per observation
    Eigen::VectorXd y_;
    Eigen::LLT<Eigen::MatrixXd> chol_;
    Eigen::VectorXd alpha_;
    double jitter_ = 0.0;
};

/// Throws NumericalError if the Gram matrix stays indefinite at maximum jitter.
GpModel gp_fit(const Dataset& ds, const GpHyperparams& hp);

/// Picks the length-scale from `grid` with the highest log marginal likelihood.
GpHyperparams refine_length_scale(const Dataset& ds, GpHyperparams hp, std::span<const double> grid);

/// Expected improvement of the GP posterior at x; the deterministic limit
/// max(mu - tau, 0) is used where the posterior variance vanishes.
double gp_ei_acq(const GpModel& m, const Point& x, double tau);

}  // namespace lfbo::oracles
