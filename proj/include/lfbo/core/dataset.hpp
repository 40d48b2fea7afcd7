#pragma once

#include <cstddef>
#include <vector>

#include "lfbo/core/search_space.hpp"

namespace lfbo {

struct Observation {
    Point x;
    double y;
};

/// Ordered collection of observations over a fixed search space.
/// Outcomes follow the maximization convention.
class Dataset {
public:
    explicit Dataset(SearchSpace space) : space_(std::move(space)) {}

    /// Validates `x` against the space and `y` for finiteness before appending.
    void add(Point x, double y);

    [[nodiscard]] const SearchSpace& space() const noexcept { return space_; }
    [[nodiscard]] const std::vector<Observation>& observations() const noexcept { return obs_; }
    [[nodiscard]] std::size_t size() const noexcept { return obs_.size(); }
    [[nodiscard]] bool empty() const noexcept { return obs_.empty(); }
    [[nodiscard]] const Observation& operator[](std::size_t i) const { return obs_.at(i); }

    [[nodiscard]] std::vector<double> outcomes() const;
    [[nodiscard]] std::vector<Point> points() const;

private:
    SearchSpace space_;
    std::vector<Observation> obs_;
};

}  // namespace lfbo
