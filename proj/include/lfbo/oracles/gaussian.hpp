#pragma once

namespace lfbo::oracles {

/// N(mu, sigma^2) belief over the outcome at one point.
struct GaussianBelief {
    double mu = 0.0;
    double sigma = 1.0;

    /// Throws InvalidArgument unless mu is finite and sigma > 0.
    static GaussianBelief make(double mu, double sigma);
};

/// Standard normal CDF via erfc.
double normal_cdf(double z);
double normal_pdf(double z);

/// P(y > tau) = Phi((mu - tau) / sigma).
double true_pi(const GaussianBelief& b, double tau);
/// E[max(y - tau, 0)] = (mu - tau) Phi(z) + sigma phi(z).
double true_ei(const GaussianBelief& b, double tau);

}  // namespace lfbo::oracles
