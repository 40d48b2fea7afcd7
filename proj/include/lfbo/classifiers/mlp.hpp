#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "lfbo/classifiers/classifier.hpp"
#include "lfbo/classifiers/network.hpp"
#include "lfbo/classifiers/training_set.hpp"

namespace lfbo::classifiers {

struct MlpConfig {
    std::vector<std::size_t> hidden{32, 32};
    std::size_t epochs = 200;
    /// 0 trains full-batch.
    std::size_t batch_size = 64;
    double learning_rate = 0.01;
    double weight_decay = 0.0;
    std::uint64_t seed = 0;
    bool zero_output_init = false;
};

/// Feed-forward classifier; continuous inputs scaled to [0,1], categorical
/// inputs one-hot encoded.
class MlpClassifier final : public WeightedClassifier {
public:
    MlpClassifier(SearchSpace space, const std::vector<std::size_t>& hidden, std::uint64_t seed,
                  bool zero_output_init = false);

    [[nodiscard]] double predict(const Point& x) const override;
    [[nodiscard]] std::vector<double> predict_batch(std::span<const Point> xs) const override;
    [[nodiscard]] const SearchSpace& space() const override { return space_; }
    [[nodiscard]] std::string backend() const override { return "mlp"; }

    /// Unclamped output pre-activations.
    [[nodiscard]] Eigen::VectorXd logits(std::span<const Point> xs) const;
    [[nodiscard]] Eigen::MatrixXd encode(std::span<const Point> xs) const;

    /// Mean classification loss on `ts` (no weight decay).
    [[nodiscard]] double loss(const WeightedTrainingSet& ts) const;
    [[nodiscard]] Eigen::VectorXd loss_gradient(const WeightedTrainingSet& ts) const;

    [[nodiscard]] FeedForwardNet& net() noexcept { return net_; }
    [[nodiscard]] const FeedForwardNet& net() const noexcept { return net_; }

    void save(std::ostream& os) const;
    static MlpClassifier load(std::istream& is);

    friend bool operator==(const MlpClassifier& a, const MlpClassifier& b) {
        return a.space_ == b.space_ && a.net_ == b.net_;
    }

private:
    MlpClassifier(SearchSpace space, FeedForwardNet net) : space_(std::move(space)), net_(std::move(net)) {}

    SearchSpace space_;
    FeedForwardNet net_;
};

/// Minimizes the weighted classification loss with Adam.
MlpClassifier train_mlp(const SearchSpace& space, const WeightedTrainingSet& ts, const MlpConfig& config);

/// Gradient of the mean classification loss with respect to the flat parameter vector.
Eigen::VectorXd grad_loss_wrt_params(const MlpClassifier& c, const WeightedTrainingSet& ts);

}  // namespace lfbo::classifiers
