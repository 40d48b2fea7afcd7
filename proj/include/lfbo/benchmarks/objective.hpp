#pragma once

#include <functional>
#include <random>
#include <string>

#include "lfbo/core/search_space.hpp"

namespace lfbo::benchmarks {

/// Black box in the maximization convention together with its known optimum.
struct Objective {
    std::string name;
    SearchSpace space;
    std::function<double(const Point&, std::mt19937_64&)> evaluate;
    double optimum = 0.0;
};

}  // namespace lfbo::benchmarks
