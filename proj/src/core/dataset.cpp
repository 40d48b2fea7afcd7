#include "lfbo/core/dataset.hpp"

#include <cmath>

#include "lfbo/core/errors.hpp"

namespace lfbo {

void Dataset::add(Point x, double y) {
    space_.validate(x);
    if (!std::isfinite(y)) throw InvalidArgument("observation outcome must be finite");
    obs_.push_back({std::move(x), y});
}

std::vector<double> Dataset::outcomes() const {
    std::vector<double> ys;
    ys.reserve(obs_.size());
    for (const auto& o : obs_) ys.push_back(o.y);
    return ys;
}

std::vector<Point> Dataset::points() const {
    std::vector<Point> xs;
    xs.reserve(obs_.size());
    for (const auto& o : obs_) xs.push_back(o.x);
    return xs;
}

}  // namespace lfbo
