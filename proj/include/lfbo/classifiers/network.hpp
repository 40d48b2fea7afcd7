#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace lfbo::classifiers {

/// Dense network with ReLU hidden layers and a linear output layer.
/// All parameters live in one flat vector, layer by layer as
/// [W (out x in, column-major), b (out)].
class FeedForwardNet {
public:
    FeedForwardNet() = default;
    /// widths = {input, hidden..., output}; at least two entries.
    explicit FeedForwardNet(std::vector<std::size_t> widths);

    /// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) for weights and biases.
    void init_uniform(std::mt19937_64& rng, bool zero_output_layer = false);

    [[nodiscard]] const std::vector<std::size_t>& widths() const noexcept { return widths_; }
    [[nodiscard]] std::size_t input_dim() const { return widths_.front(); }
    [[nodiscard]] std::size_t output_dim() const { return widths_.back(); }
    [[nodiscard]] std::size_t num_params() const noexcept { return static_cast<std::size_t>(params_.size()); }
    [[nodiscard]] Eigen::VectorXd& params() noexcept { return params_; }
    [[nodiscard]] const Eigen::VectorXd& params() const noexcept { return params_; }

    /// Layer inputs recorded by a forward pass, used by backward().
    struct Cache {
        std::vector<Eigen::MatrixXd> inputs;
    };

    /// X is (input_dim x batch); returns (output_dim x batch).
    [[nodiscard]] Eigen::MatrixXd forward(const Eigen::MatrixXd& X) const;
    Eigen::MatrixXd forward(const Eigen::MatrixXd& X, Cache& cache) const;

    /// Adds dL/dparams to `grad` given dL/doutput (output_dim x batch).
    void backward(const Cache& cache, const Eigen::MatrixXd& grad_output, Eigen::VectorXd& grad) const;

    void save(std::ostream& os) const;
    static FeedForwardNet load(std::istream& is);

    friend bool operator==(const FeedForwardNet& a, const FeedForwardNet& b);

private:
    [[nodiscard]] std::size_t layers() const { return widths_.size() - 1; }
    [[nodiscard]] Eigen::Map<const Eigen::MatrixXd> weight(std::size_t layer) const;
    [[nodiscard]] Eigen::Map<const Eigen::VectorXd> bias(std::size_t layer) const;

    std::vector<std::size_t> widths_;
    std::vector<std::size_t> offsets_;
    Eigen::VectorXd params_;
};

struct AdamConfig {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    /// Coupled L2 penalty added to the gradient.
    double weight_decay = 0.0;
};

class Adam {
public:
    Adam(std::size_t num_params, AdamConfig config);
    void step(Eigen::VectorXd& params, const Eigen::VectorXd& grad);
    [[nodiscard]] std::uint64_t steps() const noexcept { return t_; }

private:
    AdamConfig cfg_;
    Eigen::VectorXd m_, v_;
    std::uint64_t t_ = 0;
};

}  // namespace lfbo::classifiers
