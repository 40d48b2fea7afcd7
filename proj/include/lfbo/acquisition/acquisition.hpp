#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "lfbo/classifiers/classifier.hpp"
#include "lfbo/core/search_space.hpp"
#include "lfbo/core/utility.hpp"

namespace lfbo::acquisition {

/// C(x) / (1 - C(x)) of a fitted classifier; the odds estimate the expected
/// utility (up to the weight normalization constant).
struct AcquisitionModel {
    classifiers::ClassifierPtr classifier;
    Utility utility = Utility::ei();
    double tau = 0.0;
    double gamma = 1.0 / 3.0;

    [[nodiscard]] double value(const Point& x) const;
    [[nodiscard]] std::vector<double> values(std::span<const Point> xs) const;
};

/// Odds of a probability after clamping into [1e-6, 1 - 1e-6].
double odds(double probability);

double acq_value(const AcquisitionModel& m, const Point& x);

enum class ProposalSource { RandomSearch, EpsilonGreedyUniform };

struct CandidateProposal {
    Point x;
    double acq_value = 0.0;
    ProposalSource source = ProposalSource::RandomSearch;
};

using BatchScorer = std::function<std::vector<double>(std::span<const Point>)>;
using ProposalFn = std::function<CandidateProposal()>;

/// Argmax of `score` over `n_candidates` i.i.d. uniform draws; ties go to
/// the lowest candidate index.
CandidateProposal maximize_random_search(const BatchScorer& score, const SearchSpace& space,
                                         std::size_t n_candidates, std::uint64_t seed);
CandidateProposal maximize_random_search(const AcquisitionModel& m, const SearchSpace& space,
                                         std::size_t n_candidates, std::uint64_t seed);

/// With probability epsilon replaces the delegate's proposal by a uniform
/// draw scored with `score`. The returned function owns its RNG stream.
ProposalFn epsilon_greedy_wrap(ProposalFn delegate, const SearchSpace& space, BatchScorer score, double epsilon,
                               std::uint64_t seed);

/// Convex generator f of an f-divergence, through f' and the conjugate f*.
class VariationalGenerator {
public:
    virtual ~VariationalGenerator() = default;
    [[nodiscard]] virtual double derivative(double s) const = 0;
    [[nodiscard]] virtual double conjugate(double t) const = 0;
};

/// f(r) = r log(r/(r+1)) + log(1/(r+1)); the instance behind weighted classification.
class LogisticGenerator final : public VariationalGenerator {
public:
    [[nodiscard]] double derivative(double s) const override;
    [[nodiscard]] double conjugate(double t) const override;
};

/// J(s) = mean(u) f'(s) - f*(f'(s)).
double variational_objective(double s, double mean_utility, const VariationalGenerator& f);

/// Maximizes J over s > 0 by golden-section search on log s over
/// [1e-8, 10 max(u) + 1]. Returns 0 for all-zero samples.
double solve_variational_scalar(std::span<const double> u_samples,
                                const VariationalGenerator& f = LogisticGenerator{});

/// Maps a density-ratio prediction r to r / (r + (1 - gamma)/gamma), which
/// puts a ratio classifier on the probability-of-improvement scale without
/// moving its argmax.
double bore_to_pi_transform(double ratio, double gamma);

/// Density ratio p(x | y > tau) / p(x | y <= tau) from an unweighted
/// label classifier's probability q: ((1 - gamma)/gamma) q/(1 - q).
double bore_density_ratio(double probability, double gamma);

}  // namespace lfbo::acquisition
