#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "lfbo/classifiers/network.hpp"
#include "lfbo/composite/env_model.hpp"
#include "lfbo/core/search_space.hpp"
#include "lfbo/core/utility.hpp"

namespace lfbo::composite {

/// g(x) = -||h(x) - z*||^2 for a vector-valued black box h.
struct CompositeObjective {
    SearchSpace space;
    std::function<std::vector<double>(const Point&)> h;
    std::vector<double> z_star;

    [[nodiscard]] std::size_t d() const noexcept { return z_star.size(); }
    [[nodiscard]] double g_from_h(std::span<const double> h_vals) const;
    [[nodiscard]] double g(const Point& x) const { return g_from_h(h(x)); }
};

/// Environmental model as a composite objective: h is the 12-cell field at
/// the proposed parameters, z* the field at the true parameters.
CompositeObjective make_env_objective(const EnvModelSetup& setup = {});

struct VectorObservation {
    Point x;
    std::vector<double> h_vals;
};

struct CompositeConfig {
    std::vector<std::size_t> hidden{64, 64};
    std::size_t epochs = 1000;
    /// 0 trains full-batch.
    std::size_t batch_size = 0;
    double learning_rate = 0.01;
    double weight_decay = 0.0;
    double regularizer_weight = 1.0;
    std::uint64_t seed = 0;
};

/// C(x) = u(s; tau) / (u(s; tau) + 1) with s = -||h_net(x) - z*||^2 and EI
/// utility u. h_net is a ReLU network followed by a fixed per-output affine
/// map fitted to the training targets.
class CompositeClassifier {
public:
    struct Forward {
        double C;
        double s;
        std::vector<double> h_vals;
    };

    CompositeClassifier(SearchSpace space, std::vector<double> z_star, double tau, const CompositeConfig& config);

    [[nodiscard]] Forward forward(const Point& x) const;
    /// C/(1 - C) of each point after probability clamping, equal to u(s; tau) inside the clamp range.
    [[nodiscard]] std::vector<double> acquisition(std::span<const Point> xs) const;
    [[nodiscard]] std::vector<std::vector<double>> predict_h(std::span<const Point> xs) const;

    /// Negated weighted-classification objective plus the mean squared
    /// regression residual (scaled by the regularizer weight).
    [[nodiscard]] double loss(std::span<const VectorObservation> data) const;
    [[nodiscard]] Eigen::VectorXd loss_gradient(std::span<const VectorObservation> data) const;
    /// Mean over data of ||h_net(x) - y||^2.
    [[nodiscard]] double regression_mse(std::span<const VectorObservation> data) const;

    void set_output_affine(Eigen::VectorXd shift, Eigen::VectorXd scale);
    [[nodiscard]] classifiers::FeedForwardNet& net() noexcept { return net_; }
    [[nodiscard]] const classifiers::FeedForwardNet& net() const noexcept { return net_; }
    [[nodiscard]] double tau() const noexcept { return tau_; }
    [[nodiscard]] const std::vector<double>& z_star() const noexcept { return z_star_; }
    [[nodiscard]] const SearchSpace& space() const noexcept { return space_; }
    [[nodiscard]] Utility utility() const { return Utility::ei(); }

    void save(std::ostream& os) const;
    friend bool operator==(const CompositeClassifier& a, const CompositeClassifier& b);

private:
    [[nodiscard]] Eigen::MatrixXd encode(std::span<const Point> xs) const;
    [[nodiscard]] Eigen::MatrixXd outputs(const Eigen::MatrixXd& raw) const;
    double evaluate(std::span<const VectorObservation> data, Eigen::VectorXd* grad) const;

    SearchSpace space_;
    std::vector<double> z_star_;
    double tau_;
    double reg_weight_;
    classifiers::FeedForwardNet net_;
    Eigen::VectorXd shift_, scale_;
};

/// Observed g of each observation.
std::vector<double> composite_outcomes(std::span<const VectorObservation> data, std::span<const double> z_star);

/// Threshold for the composite model: the 10th percentile of observed g.
double composite_threshold(std::span<const VectorObservation> data, std::span<const double> z_star);

double composite_loss(const CompositeClassifier& c, std::span<const VectorObservation> data);

CompositeClassifier::Forward composite_forward(const CompositeClassifier& c, const Point& x);

/// Fits the output affine map to the data, then minimizes composite_loss
/// with Adam. Throws DegenerateTrainingError if no observation has g > tau.
CompositeClassifier train_composite(const SearchSpace& space, std::span<const VectorObservation> data,
                                    std::span<const double> z_star, double tau, const CompositeConfig& config);

}  // namespace lfbo::composite
