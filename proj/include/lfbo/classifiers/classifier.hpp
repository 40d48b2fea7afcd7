#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lfbo/core/search_space.hpp"

namespace lfbo::classifiers {

/// Trained probabilistic classifier C: X -> (0,1).
class WeightedClassifier {
public:
    virtual ~WeightedClassifier() = default;

    /// Throws DomainError for a point outside the classifier's space.
    [[nodiscard]] virtual double predict(const Point& x) const = 0;
    [[nodiscard]] virtual std::vector<double> predict_batch(std::span<const Point> xs) const;
    [[nodiscard]] virtual const SearchSpace& space() const = 0;
    [[nodiscard]] virtual std::string backend() const = 0;
};

using ClassifierPtr = std::shared_ptr<const WeightedClassifier>;

}  // namespace lfbo::classifiers
