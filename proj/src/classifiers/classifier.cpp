#include "lfbo/classifiers/classifier.hpp"

namespace lfbo::classifiers {

std::vector<double> WeightedClassifier::predict_batch(std::span<const Point> xs) const {
    std::vector<double> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(predict(x));
    return out;
}

}  // namespace lfbo::classifiers
