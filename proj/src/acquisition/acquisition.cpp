#include "lfbo/acquisition/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lfbo/classifiers/loss.hpp"
#include "lfbo/core/errors.hpp"

namespace lfbo::acquisition {

double odds(double probability) {
    const double c = classifiers::clamp_probability(probability);
    return c / (1.0 - c);
}

double AcquisitionModel::value(const Point& x) const { return odds(classifier->predict(x)); }

std::vector<double> AcquisitionModel::values(std::span<const Point> xs) const {
    auto out = classifier->predict_batch(xs);
    for (auto& v : out) v = odds(v);
    return out;
}

double acq_value(const AcquisitionModel& m, const Point& x) { return m.value(x); }

CandidateProposal maximize_random_search(const BatchScorer& score, const SearchSpace& space,
                                         std::size_t n_candidates, std::uint64_t seed) {
    if (n_candidates == 0) throw InvalidArgument("random search needs at least one candidate");
    std::mt19937_64 rng(seed);
    std::vector<Point> candidates;
    candidates.reserve(n_candidates);
    for (std::size_t i = 0; i < n_candidates; ++i) candidates.push_back(space.sample_uniform(rng));
    const auto values = score(candidates);
    if (values.size() != candidates.size()) throw InvalidArgument("scorer returned the wrong number of values");
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best]) best = i;
    return {std::move(candidates[best]), values[best], ProposalSource::RandomSearch};
}

CandidateProposal maximize_random_search(const AcquisitionModel& m, const SearchSpace& space,
                                         std::size_t n_candidates, std::uint64_t seed) {
    return maximize_random_search([&m](std::span<const Point> xs) { return m.values(xs); }, space, n_candidates,
                                  seed);
}

ProposalFn epsilon_greedy_wrap(ProposalFn delegate, const SearchSpace& space, BatchScorer score, double epsilon,
                               std::uint64_t seed) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw InvalidArgument("epsilon must lie in [0,1]");
    if (epsilon == 0.0) return delegate;
    auto rng = std::make_shared<std::mt19937_64>(seed);
    return [delegate = std::move(delegate), space, score = std::move(score), epsilon, rng]() {
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        if (coin(*rng) < epsilon) {
            Point x = space.sample_uniform(*rng);
            const double v = score(std::span<const Point>(&x, 1)).at(0);
            return CandidateProposal{std::move(x), v, ProposalSource::EpsilonGreedyUniform};
        }
        return delegate();
    };
}

double LogisticGenerator::derivative(double s) const { return std::log(s) - std::log1p(s); }

double LogisticGenerator::conjugate(double t) const { return -std::log(-std::expm1(t)); }

double variational_objective(double s, double mean_utility, const VariationalGenerator& f) {
    const double t = f.derivative(s);
    return mean_utility * t - f.conjugate(t);
}

double solve_variational_scalar(std::span<const double> u_samples, const VariationalGenerator& f) {
    if (u_samples.empty()) throw InvalidArgument("variational solver needs at least one sample");
    double sum = 0.0, max_u = 0.0;
    for (double u : u_samples) {
        if (!std::isfinite(u) || u < 0.0) throw InvalidArgument("utility samples must be finite and non-negative");
        sum += u;
        max_u = std::max(max_u, u);
    }
    if (max_u == 0.0) return 0.0;
    const double mean = sum / static_cast<double>(u_samples.size());

    // J is unimodal in s; search over t = log s.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::log(1e-8), b = std::log(10.0 * max_u + 1.0);
    auto J = [&](double t) { return variational_objective(std::exp(t), mean, f); };
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = J(c), fd = J(d);
    for (int it = 0; it < 200; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = J(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = J(d);
        }
    }
    return std::exp(0.5 * (a + b));
}

double bore_to_pi_transform(double ratio, double gamma) {
    if (!std::isfinite(ratio) || !(ratio > 0.0)) throw DomainError("density ratio must be finite and positive");
    if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0,1)");
    // r / (r + k) written as 1 / (1 + k/r) to stay finite for large r.
    return 1.0 / (1.0 + ((1.0 - gamma) / gamma) / ratio);
}

double bore_density_ratio(double probability, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0,1)");
    return ((1.0 - gamma) / gamma) * odds(probability);
}

}  // namespace lfbo::acquisition
