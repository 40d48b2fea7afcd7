#include "lfbo/classifiers/network.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "../common/text_io.hpp"
#include "lfbo/core/errors.hpp"

namespace lfbo::classifiers {

using Eigen::MatrixXd;
using Eigen::VectorXd;

FeedForwardNet::FeedForwardNet(std::vector<std::size_t> widths) : widths_(std::move(widths)) {
    if (widths_.size() < 2) throw InvalidArgument("network needs an input and an output width");
    for (auto w : widths_)
        if (w == 0) throw InvalidArgument("network layer widths must be positive");
    std::size_t total = 0;
    for (std::size_t l = 0; l < layers(); ++l) {
        offsets_.push_back(total);
        total += widths_[l + 1] * widths_[l] + widths_[l + 1];
    }
    offsets_.push_back(total);
    params_ = VectorXd::Zero(static_cast<Eigen::Index>(total));
}

void FeedForwardNet::init_uniform(std::mt19937_64& rng, bool zero_output_layer) {
    for (std::size_t l = 0; l < layers(); ++l) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(widths_[l]));
        std::uniform_real_distribution<double> dist(-bound, bound);
        const bool zero = zero_output_layer && l + 1 == layers();
        for (std::size_t k = offsets_[l]; k < offsets_[l + 1]; ++k)
            params_[static_cast<Eigen::Index>(k)] = zero ? 0.0 : dist(rng);
    }
}

Eigen::Map<const MatrixXd> FeedForwardNet::weight(std::size_t l) const {
    return {params_.data() + offsets_[l], static_cast<Eigen::Index>(widths_[l + 1]),
            static_cast<Eigen::Index>(widths_[l])};
}

Eigen::Map<const VectorXd> FeedForwardNet::bias(std::size_t l) const {
    return {params_.data() + offsets_[l] + widths_[l + 1] * widths_[l], static_cast<Eigen::Index>(widths_[l + 1])};
}

MatrixXd FeedForwardNet::forward(const MatrixXd& X) const {
    Cache cache;
    return forward(X, cache);
}

MatrixXd FeedForwardNet::forward(const MatrixXd& X, Cache& cache) const {
    if (static_cast<std::size_t>(X.rows()) != input_dim()) throw InvalidArgument("network input has wrong width");
    cache.inputs.resize(layers());
    cache.inputs[0] = X;
    MatrixXd out;
    for (std::size_t l = 0; l < layers(); ++l) {
        MatrixXd z = weight(l) * cache.inputs[l];
        z.colwise() += bias(l);
        if (l + 1 < layers()) {
            cache.inputs[l + 1] = z.cwiseMax(0.0);
        } else {
            out = std::move(z);
        }
    }
    return out;
}

void FeedForwardNet::backward(const Cache& cache, const MatrixXd& grad_output, VectorXd& grad) const {
    if (grad.size() != params_.size()) grad = VectorXd::Zero(params_.size());
    MatrixXd delta = grad_output;
    for (std::size_t l = layers(); l-- > 0;) {
        const auto rows = static_cast<Eigen::Index>(widths_[l + 1]);
        const auto cols = static_cast<Eigen::Index>(widths_[l]);
        Eigen::Map<MatrixXd> gW(grad.data() + offsets_[l], rows, cols);
        Eigen::Map<VectorXd> gb(grad.data() + offsets_[l] + rows * cols, rows);
        gW.noalias() += delta * cache.inputs[l].transpose();
        gb += delta.rowwise().sum();
        if (l > 0) {
            MatrixXd next = weight(l).transpose() * delta;
            delta = (cache.inputs[l].array() > 0.0).select(next, 0.0);
        }
    }
}

void FeedForwardNet::save(std::ostream& os) const {
    os << "net " << widths_.size();
    for (auto w : widths_) os << ' ' << w;
    os << '\n';
    for (Eigen::Index k = 0; k < params_.size(); ++k) {
        detail::write_double(os, params_[k]);
        os << (k + 1 == params_.size() || (k + 1) % 8 == 0 ? '\n' : ' ');
    }
}

FeedForwardNet FeedForwardNet::load(std::istream& is) {
    detail::expect_token(is, "net");
    const auto n = detail::read_size(is);
    std::vector<std::size_t> widths(n);
    for (auto& w : widths) w = detail::read_size(is);
    FeedForwardNet net(std::move(widths));
    for (Eigen::Index k = 0; k < net.params_.size(); ++k) net.params_[k] = detail::read_double(is);
    return net;
}

bool operator==(const FeedForwardNet& a, const FeedForwardNet& b) {
    return a.widths_ == b.widths_ && a.params_.size() == b.params_.size() &&
           std::equal(a.params_.data(), a.params_.data() + a.params_.size(), b.params_.data());
}

Adam::Adam(std::size_t num_params, AdamConfig config)
    : cfg_(config),
      m_(VectorXd::Zero(static_cast<Eigen::Index>(num_params))),
      v_(VectorXd::Zero(static_cast<Eigen::Index>(num_params))) {}

void Adam::step(VectorXd& params, const VectorXd& grad) {
    ++t_;
    VectorXd g = grad;
    if (cfg_.weight_decay != 0.0) g += cfg_.weight_decay * params;
    m_ = cfg_.beta1 * m_ + (1.0 - cfg_.beta1) * g;
    v_ = cfg_.beta2 * v_ + (1.0 - cfg_.beta2) * g.cwiseAbs2();
    const double c1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
    params.array() -= cfg_.learning_rate * (m_.array() / c1) / ((v_.array() / c2).sqrt() + cfg_.epsilon);
}

}  // namespace lfbo::classifiers
