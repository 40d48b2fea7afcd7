#include "lfbo/composite/composite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

#include "../common/text_io.hpp"
#include "lfbo/classifiers/loss.hpp"
#include "lfbo/core/errors.hpp"

namespace lfbo::composite {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

const double kUtilityFloor = classifiers::kProbFloor / (1.0 - classifiers::kProbFloor);
const double kUtilityCeil = (1.0 - classifiers::kProbFloor) / classifiers::kProbFloor;

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

std::vector<std::size_t> widths_for(const SearchSpace& space, const std::vector<std::size_t>& hidden, std::size_t d) {
    std::vector<std::size_t> w{space.one_hot_width()};
    w.insert(w.end(), hidden.begin(), hidden.end());
    w.push_back(d);
    return w;
}

}  // namespace

double CompositeObjective::g_from_h(std::span<const double> h_vals) const {
    if (h_vals.size() != z_star.size()) throw InvalidArgument("black-box output has the wrong dimension");
    return -squared_distance(h_vals, z_star);
}

CompositeObjective make_env_objective(const EnvModelSetup& setup) {
    return {setup.space(), [](const Point& x) { return env_field(EnvModelParams::from_point(x)); },
            env_field(setup.truth)};
}

CompositeClassifier::CompositeClassifier(SearchSpace space, std::vector<double> z_star, double tau,
                                         const CompositeConfig& config)
    : space_(std::move(space)),
      z_star_(std::move(z_star)),
      tau_(tau),
      reg_weight_(config.regularizer_weight),
      net_(widths_for(space_, config.hidden, z_star_.size())),
      shift_(VectorXd::Zero(static_cast<Eigen::Index>(z_star_.size()))),
      scale_(VectorXd::Ones(static_cast<Eigen::Index>(z_star_.size()))) {
    if (z_star_.empty()) throw InvalidArgument("composite target z* must be non-empty");
    if (!std::isfinite(tau_)) throw InvalidArgument("threshold must be finite");
    std::mt19937_64 rng(config.seed);
    net_.init_uniform(rng);
}

void CompositeClassifier::set_output_affine(VectorXd shift, VectorXd scale) {
    if (shift.size() != shift_.size() || scale.size() != scale_.size())
        throw InvalidArgument("output affine map has the wrong dimension");
    shift_ = std::move(shift);
    scale_ = std::move(scale);
}

MatrixXd CompositeClassifier::encode(std::span<const Point> xs) const {
    MatrixXd X(static_cast<Eigen::Index>(space_.one_hot_width()), static_cast<Eigen::Index>(xs.size()));
    for (std::size_t j = 0; j < xs.size(); ++j) {
        space_.validate(xs[j]);
        space_.encode_one_hot(xs[j], std::span<double>(X.col(static_cast<Eigen::Index>(j)).data(),
                                                       static_cast<std::size_t>(X.rows())));
    }
    return X;
}

MatrixXd CompositeClassifier::outputs(const MatrixXd& raw) const {
    MatrixXd H = scale_.asDiagonal() * raw;
    H.colwise() += shift_;
    return H;
}

CompositeClassifier::Forward CompositeClassifier::forward(const Point& x) const {
    const MatrixXd H = outputs(net_.forward(encode(std::span<const Point>(&x, 1))));
    std::vector<double> h(H.data(), H.data() + H.rows());
    const double s = -squared_distance(h, z_star_);
    const double u = Utility::ei()(s, tau_);
    return {u / (u + 1.0), s, std::move(h)};
}

std::vector<double> CompositeClassifier::acquisition(std::span<const Point> xs) const {
    if (xs.empty()) return {};
    const MatrixXd H = outputs(net_.forward(encode(xs)));
    std::vector<double> out(xs.size());
    for (Eigen::Index j = 0; j < H.cols(); ++j) {
        const double s = -squared_distance(std::span<const double>(H.col(j).data(), z_star_.size()), z_star_);
        out[static_cast<std::size_t>(j)] = std::clamp(std::max(s - tau_, 0.0), kUtilityFloor, kUtilityCeil);
    }
    return out;
}

std::vector<std::vector<double>> CompositeClassifier::predict_h(std::span<const Point> xs) const {
    if (xs.empty()) return {};
    const MatrixXd H = outputs(net_.forward(encode(xs)));
    std::vector<std::vector<double>> out;
    for (Eigen::Index j = 0; j < H.cols(); ++j) out.emplace_back(H.col(j).data(), H.col(j).data() + H.rows());
    return out;
}

double CompositeClassifier::evaluate(std::span<const VectorObservation> data, VectorXd* grad) const {
    if (data.empty()) throw InvalidArgument("composite loss needs at least one observation");
    const std::size_t d = z_star_.size();
    std::vector<Point> xs;
    xs.reserve(data.size());
    for (const auto& o : data) {
        if (o.h_vals.size() != d) throw InvalidArgument("observation has the wrong output dimension");
        xs.push_back(o.x);
    }
    classifiers::FeedForwardNet::Cache cache;
    const MatrixXd raw = net_.forward(encode(xs), cache);
    const MatrixXd H = outputs(raw);
    const double inv_n = 1.0 / static_cast<double>(data.size());
    MatrixXd dH = MatrixXd::Zero(H.rows(), H.cols());
    double total = 0.0;

    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto col = static_cast<Eigen::Index>(i);
        const std::span<const double> h(H.col(col).data(), d);
        const auto& y = data[i].h_vals;
        const double w = std::max(-squared_distance(y, z_star_) - tau_, 0.0);
        const double s = -squared_distance(h, z_star_);
        const double u = std::max(s - tau_, 0.0);
        const double uc = std::clamp(u, kUtilityFloor, kUtilityCeil);
        // -w log C - log(1 - C) with C = u / (u + 1)
        total += -w * (std::log(uc) - std::log1p(uc)) + std::log1p(uc);
        const double dcls_du = (u > kUtilityFloor && u < kUtilityCeil) ? -w / u + (w + 1.0) / (1.0 + u) : 0.0;
        double reg = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            const double r = h[k] - y[k];
            reg += r * r;
            dH(static_cast<Eigen::Index>(k), col) =
                inv_n * (dcls_du * (-2.0) * (h[k] - z_star_[k]) + 2.0 * reg_weight_ * r);
        }
        total += reg_weight_ * reg;
    }
    if (grad) {
        *grad = VectorXd::Zero(static_cast<Eigen::Index>(net_.num_params()));
        const MatrixXd draw = scale_.asDiagonal() * dH;
        net_.backward(cache, draw, *grad);
    }
    return total * inv_n;
}

double CompositeClassifier::loss(std::span<const VectorObservation> data) const { return evaluate(data, nullptr); }

VectorXd CompositeClassifier::loss_gradient(std::span<const VectorObservation> data) const {
    VectorXd g;
    evaluate(data, &g);
    return g;
}

double CompositeClassifier::regression_mse(std::span<const VectorObservation> data) const {
    std::vector<Point> xs;
    for (const auto& o : data) xs.push_back(o.x);
    const auto hs = predict_h(xs);
    double total = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) total += squared_distance(hs[i], data[i].h_vals);
    return total / static_cast<double>(data.size());
}

void CompositeClassifier::save(std::ostream& os) const {
    os << "lfbo-composite 1\n";
    detail::write_space(os, space_);
    os << "tau ";
    detail::write_double(os, tau_);
    os << "\nreg ";
    detail::write_double(os, reg_weight_);
    os << "\nouts " << z_star_.size() << '\n';
    for (std::size_t k = 0; k < z_star_.size(); ++k) {
        detail::write_double(os, z_star_[k]);
        os << ' ';
        detail::write_double(os, shift_[static_cast<Eigen::Index>(k)]);
        os << ' ';
        detail::write_double(os, scale_[static_cast<Eigen::Index>(k)]);
        os << '\n';
    }
    net_.save(os);
}

bool operator==(const CompositeClassifier& a, const CompositeClassifier& b) {
    return a.space_ == b.space_ && a.z_star_ == b.z_star_ && a.tau_ == b.tau_ && a.reg_weight_ == b.reg_weight_ &&
           a.shift_ == b.shift_ && a.scale_ == b.scale_ && a.net_ == b.net_;
}

std::vector<double> composite_outcomes(std::span<const VectorObservation> data, std::span<const double> z_star) {
    std::vector<double> g;
    g.reserve(data.size());
    for (const auto& o : data) {
        if (o.h_vals.size() != z_star.size()) throw InvalidArgument("observation has the wrong output dimension");
        g.push_back(-squared_distance(o.h_vals, z_star));
    }
    return g;
}

double composite_threshold(std::span<const VectorObservation> data, std::span<const double> z_star) {
    const auto g = composite_outcomes(data, z_star);
    return empirical_quantile(g, 0.1);
}

double composite_loss(const CompositeClassifier& c, std::span<const VectorObservation> data) { return c.loss(data); }

CompositeClassifier::Forward composite_forward(const CompositeClassifier& c, const Point& x) { return c.forward(x); }

CompositeClassifier train_composite(const SearchSpace& space, std::span<const VectorObservation> data,
                                    std::span<const double> z_star, double tau, const CompositeConfig& config) {
    if (data.empty()) throw EmptyDatasetError("composite training needs observations");
    const auto g = composite_outcomes(data, z_star);
    if (std::none_of(g.begin(), g.end(), [tau](double v) { return v > tau; }))
        throw DegenerateTrainingError("no observation lies above the composite threshold");

    CompositeClassifier model(space, std::vector<double>(z_star.begin(), z_star.end()), tau, config);
    const auto d = static_cast<Eigen::Index>(z_star.size());
    VectorXd mean = VectorXd::Zero(d), sq = VectorXd::Zero(d);
    for (const auto& o : data)
        for (Eigen::Index k = 0; k < d; ++k) {
            mean[k] += o.h_vals[static_cast<std::size_t>(k)];
            sq[k] += o.h_vals[static_cast<std::size_t>(k)] * o.h_vals[static_cast<std::size_t>(k)];
        }
    const auto n = static_cast<double>(data.size());
    mean /= n;
    VectorXd scale(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        const double var = std::max(sq[k] / n - mean[k] * mean[k], 0.0);
        scale[k] = var > 1e-16 ? std::sqrt(var) : 1.0;
    }
    model.set_output_affine(mean, scale);

    classifiers::Adam adam(model.net().num_params(),
                           {.learning_rate = config.learning_rate, .weight_decay = config.weight_decay});
    const std::size_t batch = config.batch_size == 0 ? data.size() : std::min(config.batch_size, data.size());
    std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<VectorObservation> buf;
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        if (batch < data.size()) std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < data.size(); start += batch) {
            const std::size_t len = std::min(batch, data.size() - start);
            std::span<const VectorObservation> view = data;
            if (len < data.size()) {
                buf.clear();
                for (std::size_t k = 0; k < len; ++k) buf.push_back(data[order[start + k]]);
                view = buf;
            }
            adam.step(model.net().params(), model.loss_gradient(view));
        }
    }
    return model;
}

}  // namespace lfbo::composite
