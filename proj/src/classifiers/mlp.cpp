#include "lfbo/classifiers/mlp.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>

#include "../common/text_io.hpp"
#include "lfbo/classifiers/loss.hpp"
#include "lfbo/core/errors.hpp"

namespace lfbo::classifiers {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

std::vector<std::size_t> layer_widths(const SearchSpace& space, const std::vector<std::size_t>& hidden) {
    std::vector<std::size_t> w{space.one_hot_width()};
    w.insert(w.end(), hidden.begin(), hidden.end());
    w.push_back(1);
    return w;
}

// Loss and dL/dlogit for the columns listed in `idx`, averaged over idx.
double batch_loss(const VectorXd& logits, const WeightedTrainingSet& ts, std::span<const std::size_t> idx,
                  MatrixXd* grad_out) {
    const double inv_n = 1.0 / static_cast<double>(idx.size());
    double total = 0.0;
    if (grad_out) grad_out->resize(1, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const auto i = idx[k];
        const auto r = logit_loss(logits[static_cast<Eigen::Index>(k)], ts.pos_weights[i], ts.neg_weight(i));
        total += r.value;
        if (grad_out) (*grad_out)(0, static_cast<Eigen::Index>(k)) = r.dlogit * inv_n;
    }
    return total * inv_n;
}

std::vector<std::size_t> iota_indices(std::size_t n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

}  // namespace

MlpClassifier::MlpClassifier(SearchSpace space, const std::vector<std::size_t>& hidden, std::uint64_t seed,
                             bool zero_output_init)
    : space_(std::move(space)), net_(layer_widths(space_, hidden)) {
    std::mt19937_64 rng(seed);
    net_.init_uniform(rng, zero_output_init);
}

MatrixXd MlpClassifier::encode(std::span<const Point> xs) const {
    MatrixXd X(static_cast<Eigen::Index>(space_.one_hot_width()), static_cast<Eigen::Index>(xs.size()));
    for (std::size_t j = 0; j < xs.size(); ++j) {
        space_.validate(xs[j]);
        space_.encode_one_hot(xs[j], std::span<double>(X.col(static_cast<Eigen::Index>(j)).data(),
                                                       static_cast<std::size_t>(X.rows())));
    }
    return X;
}

VectorXd MlpClassifier::logits(std::span<const Point> xs) const {
    return net_.forward(encode(xs)).row(0).transpose();
}

double MlpClassifier::predict(const Point& x) const {
    return clamped_sigmoid(logits(std::span<const Point>(&x, 1))[0]);
}

std::vector<double> MlpClassifier::predict_batch(std::span<const Point> xs) const {
    if (xs.empty()) return {};
    const VectorXd z = logits(xs);
    std::vector<double> out(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) out[j] = clamped_sigmoid(z[static_cast<Eigen::Index>(j)]);
    return out;
}

double MlpClassifier::loss(const WeightedTrainingSet& ts) const {
    const auto idx = iota_indices(ts.size());
    return batch_loss(logits(ts.points), ts, idx, nullptr);
}

VectorXd MlpClassifier::loss_gradient(const WeightedTrainingSet& ts) const {
    const auto idx = iota_indices(ts.size());
    FeedForwardNet::Cache cache;
    const VectorXd z = net_.forward(encode(ts.points), cache).row(0).transpose();
    MatrixXd dz;
    batch_loss(z, ts, idx, &dz);
    VectorXd grad = VectorXd::Zero(static_cast<Eigen::Index>(net_.num_params()));
    net_.backward(cache, dz, grad);
    return grad;
}

void MlpClassifier::save(std::ostream& os) const {
    os << "lfbo-mlp 1\n";
    detail::write_space(os, space_);
    net_.save(os);
}

MlpClassifier MlpClassifier::load(std::istream& is) {
    detail::expect_token(is, "lfbo-mlp");
    if (detail::read_size(is) != 1) throw ParseError("unsupported mlp model version");
    auto space = detail::read_space(is);
    auto net = FeedForwardNet::load(is);
    if (net.input_dim() != space.one_hot_width() || net.output_dim() != 1)
        throw ParseError("mlp network shape does not match its search space");
    return MlpClassifier(std::move(space), std::move(net));
}

MlpClassifier train_mlp(const SearchSpace& space, const WeightedTrainingSet& ts, const MlpConfig& config) {
    ts.validate_for_training();
    MlpClassifier model(space, config.hidden, config.seed, config.zero_output_init);
    const MatrixXd X = model.encode(ts.points);
    const std::size_t n = ts.size();
    const std::size_t batch = config.batch_size == 0 ? n : std::min(config.batch_size, n);

    Adam adam(model.net().num_params(), AdamConfig{.learning_rate = config.learning_rate,
                                                   .weight_decay = config.weight_decay});
    // Separate stream from initialization so batch order doesn't shift with architecture.
    std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    auto order = iota_indices(n);
    VectorXd grad(static_cast<Eigen::Index>(model.net().num_params()));
    FeedForwardNet::Cache cache;
    MatrixXd Xb, dz;

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        if (batch < n) std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < n; start += batch) {
            const std::size_t len = std::min(batch, n - start);
            const std::span<const std::size_t> idx(order.data() + start, len);
            const MatrixXd* input = &X;
            if (len < n) {
                Xb.resize(X.rows(), static_cast<Eigen::Index>(len));
                for (std::size_t k = 0; k < len; ++k)
                    Xb.col(static_cast<Eigen::Index>(k)) = X.col(static_cast<Eigen::Index>(idx[k]));
                input = &Xb;
            }
            const VectorXd z = model.net().forward(*input, cache).row(0).transpose();
            batch_loss(z, ts, idx, &dz);
            grad.setZero();
            model.net().backward(cache, dz, grad);
            adam.step(model.net().params(), grad);
        }
    }
    return model;
}

VectorXd grad_loss_wrt_params(const MlpClassifier& c, const WeightedTrainingSet& ts) { return c.loss_gradient(ts); }

}  // namespace lfbo::classifiers
