#include "lfbo/composite/env_model.hpp"

#include <cmath>
#include <numbers>

#include "lfbo/core/errors.hpp"

namespace lfbo::composite {

void EnvModelParams::validate() const {
    if (!std::isfinite(M) || !std::isfinite(D) || !std::isfinite(K) || !std::isfinite(xi))
        throw InvalidArgument("environmental model parameters must be finite");
    if (!(M > 0.0) || !(D > 0.0) || !(xi > 0.0)) throw InvalidArgument("M, D and xi must be positive");
}

EnvModelParams EnvModelParams::from_point(const Point& x) {
    if (x.size() != 4) throw DomainError("environmental model takes 4 parameters (M, D, K, xi)");
    return {x[0], x[1], x[2], x[3]};
}

double env_concentration(double a, double b, const EnvModelParams& p) {
    if (!(b > 0.0)) throw DomainError("concentration is defined for b > 0 only");
    const double pi4 = 4.0 * std::numbers::pi;
    double c = p.M / std::sqrt(pi4 * p.D * b) * std::exp(-a * a / (4.0 * p.D * b));
    if (b > p.xi) {
        const double dt = b - p.xi;
        c += p.M / std::sqrt(pi4 * p.D * dt) * std::exp(-(a - p.K) * (a - p.K) / (4.0 * p.D * dt));
    }
    return c;
}

std::vector<double> env_field(const EnvModelParams& p) {
    p.validate();
    std::vector<double> out;
    out.reserve(kEnvOutputs);
    for (double a : kEnvLocations)
        for (double b : kEnvTimes) out.push_back(env_concentration(a, b, p));
    return out;
}

double env_objective(const EnvModelParams& p, const EnvModelParams& p0) {
    const auto f = env_field(p);
    const auto f0 = env_field(p0);
    double total = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) total += (f[i] - f0[i]) * (f[i] - f0[i]);
    return total;
}

SearchSpace EnvModelSetup::space() const {
    return SearchSpace::box(std::vector<Bounds>(ranges.begin(), ranges.end()));
}

}  // namespace lfbo::composite
