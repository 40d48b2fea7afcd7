#pragma once

// Independent reference computations used only by the tests.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace lfbo::testing {

struct GridOptimum {
    double x;
    double value;
};

/// Dense grid of `points` evaluations followed by golden-section refinement
/// inside the neighbouring grid cells.
inline GridOptimum dense_grid_argmax(const std::function<double(double)>& f, double lo, double hi,
                                     std::size_t points = 1'000'000) {
    const double step = (hi - lo) / static_cast<double>(points - 1);
    std::size_t best = 0;
    double best_v = f(lo);
    for (std::size_t i = 1; i < points; ++i) {
        const double v = f(lo + step * static_cast<double>(i));
        if (v > best_v) {
            best_v = v;
            best = i;
        }
    }
    double a = std::max(lo, lo + step * (static_cast<double>(best) - 1.0));
    double b = std::min(hi, lo + step * (static_cast<double>(best) + 1.0));
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - r * (b - a), d = a + r * (b - a);
    for (int it = 0; it < 200; ++it) {
        if (f(c) > f(d))
            b = d;
        else
            a = c;
        c = b - r * (b - a);
        d = a + r * (b - a);
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

/// Gaussian conditioning with an explicit matrix inverse.
struct DirectPosterior {
    double mean;
    double variance;
};

inline DirectPosterior direct_gp_posterior(const Eigen::MatrixXd& K, const Eigen::VectorXd& k_star, double k_ss,
                                           const Eigen::VectorXd& y, double prior_mean, double noise) {
    const Eigen::MatrixXd Kn = K + noise * Eigen::MatrixXd::Identity(K.rows(), K.cols());
    const Eigen::MatrixXd inv = Kn.fullPivLu().inverse();
    const Eigen::VectorXd centred = y.array() - prior_mean;
    return {prior_mean + k_star.dot(inv * centred), k_ss - k_star.dot(inv * k_star)};
}

/// Max over entries of |a - b| / max(|a|, |b|, floor).
inline double max_relative_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double floor = 1e-6) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double denom = std::max({std::abs(a[i]), std::abs(b[i]), floor});
        worst = std::max(worst, std::abs(a[i] - b[i]) / denom);
    }
    return worst;
}

/// Central differences of `f` at `params` with step h.
inline Eigen::VectorXd central_differences(const std::function<double(const Eigen::VectorXd&)>& f,
                                           Eigen::VectorXd params, double h = 1e-5) {
    Eigen::VectorXd g(params.size());
    for (Eigen::Index i = 0; i < params.size(); ++i) {
        const double orig = params[i];
        params[i] = orig + h;
        const double up = f(params);
        params[i] = orig - h;
        const double down = f(params);
        params[i] = orig;
        g[i] = (up - down) / (2.0 * h);
    }
    return g;
}

struct MonteCarloEstimate {
    double mean;
    double std_error;
};

inline MonteCarloEstimate monte_carlo(const std::function<double(double)>& integrand, double mu, double sigma,
                                      std::size_t draws, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(mu, sigma);
    double sum = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
        const double v = integrand(n(rng));
        sum += v;
        sq += v * v;
    }
    const double m = sum / static_cast<double>(draws);
    const double var = std::max(0.0, sq / static_cast<double>(draws) - m * m);
    return {m, std::sqrt(var / static_cast<double>(draws))};
}

}  // namespace lfbo::testing
