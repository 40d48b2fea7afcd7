#pragma once

#include <span>
#include <vector>

#include "lfbo/core/search_space.hpp"

namespace lfbo::classifiers {

/// Per-point weights of the two cross-entropy terms
///   -(1/n) sum_i [ w+_i log C(x_i) + w-_i log(1 - C(x_i)) ].
/// The utility-weighted objective uses w+_i = u(y_i; tau) and w-_i = 1 for
/// every point; plain labelled classification uses (1, 0) for positives and
/// (0, 1) for negatives.
struct WeightedTrainingSet {
    std::vector<Point> points;
    std::vector<double> pos_weights;
    /// Empty means every point carries a unit negative weight.
    std::vector<double> neg_weights;

    static WeightedTrainingSet utility_weighted(std::vector<Point> points, std::vector<double> pos_weights);
    /// One-instance-per-point encoding: label 1 contributes only to the
    /// positive term, label 0 only to the negative term.
    static WeightedTrainingSet labelled(std::vector<Point> points, const std::vector<bool>& labels);

    [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
    [[nodiscard]] double neg_weight(std::size_t i) const { return neg_weights.empty() ? 1.0 : neg_weights[i]; }
    [[nodiscard]] bool has_positive() const;

    /// Throws InvalidArgument on length mismatch or negative/non-finite
    /// weights, DegenerateTrainingError if no positive weight is present.
    void validate_for_training() const;
};

}  // namespace lfbo::classifiers
