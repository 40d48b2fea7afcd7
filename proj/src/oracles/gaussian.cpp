#include "lfbo/oracles/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lfbo/core/errors.hpp"

namespace lfbo::oracles {

GaussianBelief GaussianBelief::make(double mu, double sigma) {
    if (!std::isfinite(mu) || !std::isfinite(sigma) || !(sigma > 0.0))
        throw InvalidArgument("gaussian belief needs finite mu and sigma > 0");
    return {mu, sigma};
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_pdf(double z) { return std::exp(-0.5 * z * z) * (std::numbers::inv_sqrtpi / std::numbers::sqrt2); }

double true_pi(const GaussianBelief& b, double tau) { return normal_cdf((b.mu - tau) / b.sigma); }

double true_ei(const GaussianBelief& b, double tau) {
    const double z = (b.mu - tau) / b.sigma;
    return std::max(0.0, (b.mu - tau) * normal_cdf(z) + b.sigma * normal_pdf(z));
}

}  // namespace lfbo::oracles
