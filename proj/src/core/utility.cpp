#include "lfbo/core/utility.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lfbo/core/errors.hpp"

namespace lfbo {

Utility Utility::power(double lambda) {
    if (!std::isfinite(lambda) || lambda < 0.0) throw InvalidArgument("power utility needs finite lambda >= 0");
    return Utility(Kind::Power, lambda);
}

std::string Utility::name() const {
    switch (kind_) {
        case Kind::PI: return "pi";
        case Kind::EI: return "ei";
        case Kind::Power: {
            std::ostringstream os;
            os << "power(" << lambda_ << ")";
            return os.str();
        }
    }
    return "?";
}

double Utility::operator()(double y, double tau) const {
    if (!std::isfinite(y) || !std::isfinite(tau)) throw InvalidArgument("utility arguments must be finite");
    const double gap = y - tau;
    if (!(gap > 0.0)) return 0.0;
    switch (kind_) {
        case Kind::PI: return 1.0;
        case Kind::EI: return gap;
        case Kind::Power: return std::pow(gap, lambda_);
    }
    return 0.0;
}

double eval_utility(const Utility& u, double y, double tau) { return u(y, tau); }

double empirical_quantile(std::span<const double> values, double q) {
    if (values.empty()) throw EmptyDatasetError("quantile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("quantile level must lie in [0,1]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    // Exact endpoints avoid 0*inf style surprises and keep tau inside [min, max].
    if (frac == 0.0) return sorted[lo];
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double select_threshold(std::span<const double> outcomes, const ThresholdPolicy& policy) {
    if (outcomes.empty()) throw EmptyDatasetError("cannot select a threshold on an empty dataset");
    if (!(policy.gamma > 0.0 && policy.gamma < 1.0)) throw InvalidArgument("gamma must lie in (0,1)");
    return empirical_quantile(outcomes, 1.0 - policy.gamma);
}

double select_threshold(const Dataset& ds, const ThresholdPolicy& policy) {
    const auto ys = ds.outcomes();
    return select_threshold(ys, policy);
}

std::vector<double> build_weights(std::span<const double> outcomes, const Utility& u, double tau, bool normalize) {
    std::vector<double> w;
    w.reserve(outcomes.size());
    double sum = 0.0;
    std::size_t positives = 0;
    for (double y : outcomes) {
        const double v = u(y, tau);
        w.push_back(v);
        if (v > 0.0) {
            sum += v;
            ++positives;
        }
    }
    if (normalize && positives > 0) {
        const double mean = sum / static_cast<double>(positives);
        for (auto& v : w)
            if (v > 0.0) v /= mean;
    }
    return w;
}

std::vector<double> build_weights(const Dataset& ds, const Utility& u, double tau, bool normalize) {
    if (ds.empty()) throw EmptyDatasetError("cannot build weights for an empty dataset");
    const auto ys = ds.outcomes();
    return build_weights(ys, u, tau, normalize);
}

}  // namespace lfbo
