#include "lfbo/oracles/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lfbo/core/errors.hpp"

namespace lfbo::oracles {

double matern52(double r) {
    const double s = std::sqrt(5.0) * r;
    return (1.0 + s + s * s / 3.0) * std::exp(-s);
}

Eigen::VectorXd GpModel::encode(const Point& x) const {
    space_.validate(x);
    Eigen::VectorXd e(static_cast<Eigen::Index>(x.size()));
    for (std::size_t d = 0; d < x.size(); ++d) {
        const auto count = space_.category_count(d);
        e[static_cast<Eigen::Index>(d)] =
            count > 0 ? x[d] / static_cast<double>(count - 1) : space_.normalize(d, x[d]);
    }
    return e;
}

double GpModel::kernel_encoded(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
    return hp_.signal_variance * matern52((a - b).norm() / hp_.length_scale);
}

double GpModel::kernel(const Point& a, const Point& b) const { return kernel_encoded(encode(a), encode(b)); }

GpModel::Prediction GpModel::predict(const Point& x) const {
    const Eigen::VectorXd e = encode(x);
    if (X_.cols() == 0) return {hp_.prior_mean, hp_.signal_variance};
    Eigen::VectorXd k(X_.cols());
    for (Eigen::Index i = 0; i < X_.cols(); ++i) k[i] = kernel_encoded(e, X_.col(i));
    const double mean = hp_.prior_mean + k.dot(alpha_);
    const Eigen::VectorXd v = chol_.matrixL().solve(k);
    const double var = hp_.signal_variance - v.squaredNorm();
    return {mean, std::max(var, 0.0)};
}

double GpModel::log_marginal_likelihood() const {
    const auto n = static_cast<double>(y_.size());
    if (y_.size() == 0) return 0.0;
    const Eigen::VectorXd r = y_.array() - hp_.prior_mean;
    double log_det = 0.0;
    const Eigen::MatrixXd L = chol_.matrixL();
    for (Eigen::Index i = 0; i < L.rows(); ++i) log_det += 2.0 * std::log(L(i, i));
    return -0.5 * r.dot(alpha_) - 0.5 * log_det - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

GpModel gp_fit(const Dataset& ds, const GpHyperparams& hp) {
    if (!(hp.length_scale > 0.0) || !(hp.signal_variance > 0.0) || !(hp.noise_variance >= 0.0))
        throw InvalidArgument("gp hyperparameters must be positive");
    GpModel m(ds.space(), hp);
    const auto n = static_cast<Eigen::Index>(ds.size());
    m.X_.resize(static_cast<Eigen::Index>(ds.space().dims()), n);
    m.y_.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        m.X_.col(i) = m.encode(ds[static_cast<std::size_t>(i)].x);
        m.y_[i] = ds[static_cast<std::size_t>(i)].y;
    }
    if (n == 0) return m;

    Eigen::MatrixXd K(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) K(i, j) = K(j, i) = m.kernel_encoded(m.X_.col(i), m.X_.col(j));
    K.diagonal().array() += hp.noise_variance;

    for (double jitter : {0.0, 1e-12, 1e-10, 1e-8, 1e-6}) {
        Eigen::MatrixXd Kj = K;
        Kj.diagonal().array() += jitter * hp.signal_variance;
        m.chol_.compute(Kj);
        if (m.chol_.info() == Eigen::Success) {
            m.jitter_ = jitter * hp.signal_variance;
            m.alpha_ = m.chol_.solve((m.y_.array() - hp.prior_mean).matrix());
            return m;
        }
    }
    throw NumericalError("gram matrix is not positive definite even with maximum jitter");
}

GpHyperparams refine_length_scale(const Dataset& ds, GpHyperparams hp, std::span<const double> grid) {
    double best = -std::numeric_limits<double>::infinity();
    GpHyperparams chosen = hp;
    for (double ls : grid) {
        hp.length_scale = ls;
        try {
            const double lml = gp_fit(ds, hp).log_marginal_likelihood();
            if (lml > best) {
                best = lml;
                chosen = hp;
            }
        } catch (const NumericalError&) {
        }
    }
    return chosen;
}

double gp_ei_acq(const GpModel& m, const Point& x, double tau) {
    const auto p = m.predict(x);
    const double sigma = std::sqrt(p.variance);
    if (!(sigma > 1e-12)) return std::max(p.mean - tau, 0.0);
    return true_ei(GaussianBelief{p.mean, sigma}, tau);
}

}  // namespace lfbo::oracles
