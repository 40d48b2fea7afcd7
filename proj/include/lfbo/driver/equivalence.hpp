#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lfbo/classifiers/mlp.hpp"

namespace lfbo::driver {

enum class EquivalenceMethod { LfboEi, LfboPi, Bore };
enum class GroundTruth { PI, EI };

std::string to_string(EquivalenceMethod m);
std::string to_string(GroundTruth t);

/// I.i.d. uniform sampling of the noisy synthetic function; each method's
/// acquisition estimate is compared against the closed-form PI and EI of
/// N(g(x), noise_sigma^2) at the data-derived threshold.
struct EquivalenceConfig {
    std::vector<std::size_t> n_values{100, 1000, 10000};
    std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
    std::vector<EquivalenceMethod> methods{EquivalenceMethod::LfboEi, EquivalenceMethod::LfboPi,
                                           EquivalenceMethod::Bore};
    std::size_t grid_points = 1001;
    double noise_sigma = 0.1;
    double gamma = 1.0 / 3.0;
    classifiers::MlpConfig mlp{.hidden = {128, 128},
                               .epochs = 1000,
                               .batch_size = 0,
                               .learning_rate = 0.01,
                               .weight_decay = 1e-6};
};

struct EquivalenceRow {
    EquivalenceMethod method;
    GroundTruth truth;
    std::size_t n;
    std::uint64_t seed;
    double l1_error;

    /// "<method>@<truth>", e.g. "bore@ei".
    [[nodiscard]] std::string label() const;
};

struct EquivalenceReport {
    std::vector<EquivalenceRow> rows;

    /// Mean error over seeds for one (method, truth, n) cell; NaN if absent.
    [[nodiscard]] double mean_error(EquivalenceMethod m, GroundTruth t, std::size_t n) const;
};

/// Acquisition estimates of one fitted method on `grid`, on the scale of
/// its matching ground truth.
struct EquivalenceFit {
    std::vector<double> estimate;
    double tau;
};
EquivalenceFit fit_equivalence_method(EquivalenceMethod m, std::size_t n, std::uint64_t seed,
                                      const EquivalenceConfig& cfg, const std::vector<double>& grid);

EquivalenceReport run_equivalence_experiment(const EquivalenceConfig& cfg);

/// Evenly spaced grid on [-1, 1].
std::vector<double> equivalence_grid(std::size_t points);

}  // namespace lfbo::driver
