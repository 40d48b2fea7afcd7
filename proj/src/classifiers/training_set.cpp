#include "lfbo/classifiers/training_set.hpp"

#include <cmath>

#include "lfbo/core/errors.hpp"

namespace lfbo::classifiers {

WeightedTrainingSet WeightedTrainingSet::utility_weighted(std::vector<Point> points, std::vector<double> pos_weights) {
    return {std::move(points), std::move(pos_weights), {}};
}

WeightedTrainingSet WeightedTrainingSet::labelled(std::vector<Point> points, const std::vector<bool>& labels) {
    if (labels.size() != points.size()) throw InvalidArgument("labels and points differ in length");
    WeightedTrainingSet ts{std::move(points), {}, {}};
    ts.pos_weights.reserve(labels.size());
    ts.neg_weights.reserve(labels.size());
    for (bool l : labels) {
        ts.pos_weights.push_back(l ? 1.0 : 0.0);
        ts.neg_weights.push_back(l ? 0.0 : 1.0);
    }
    return ts;
}

bool WeightedTrainingSet::has_positive() const {
    for (double w : pos_weights)
        if (w > 0.0) return true;
    return false;
}

void WeightedTrainingSet::validate_for_training() const {
    if (pos_weights.size() != points.size()) throw InvalidArgument("pos_weights and points differ in length");
    if (!neg_weights.empty() && neg_weights.size() != points.size())
        throw InvalidArgument("neg_weights and points differ in length");
    for (double w : pos_weights)
        if (!std::isfinite(w) || w < 0.0) throw InvalidArgument("weights must be finite and non-negative");
    for (double w : neg_weights)
        if (!std::isfinite(w) || w < 0.0) throw InvalidArgument("weights must be finite and non-negative");
    if (!has_positive()) throw DegenerateTrainingError("training set has no positive-weight sample");
}

}  // namespace lfbo::classifiers
