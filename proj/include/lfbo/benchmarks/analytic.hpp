#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lfbo/benchmarks/objective.hpp"

namespace lfbo::benchmarks {

/// -sin(3x) - x^2 + 0.6x on [-1, 1]. Throws DomainError outside the range.
double synthetic_g(double x);

/// (6x - 2)^2 sin(12x - 4) on [0, 1]. Throws DomainError outside the range.
double forrester(double x);

inline constexpr double kSyntheticArgmax = -0.369401905637099;
inline constexpr double kSyntheticMax = 0.5368004843689;
inline constexpr double kForresterArgmin = 0.7572487578306107;
inline constexpr double kForresterMin = -6.0207400557670825;

/// Closed-form test function with Gaussian observation noise. `value` is in
/// the maximization convention (minimization problems are negated).
struct AnalyticBenchmark {
    std::string name;
    SearchSpace space;
    std::function<double(const Point&)> value;
    double noise_sigma = 0.0;
    double optimum_value = 0.0;
    Point optimum_x;

    [[nodiscard]] double evaluate(const Point& x, std::mt19937_64& rng) const;
    [[nodiscard]] Objective objective() const;
};

AnalyticBenchmark make_synthetic1d(double noise_sigma = 0.0);
AnalyticBenchmark make_forrester(double noise_sigma = 0.0);
/// Negated squared error of the environmental model at the true parameters.
AnalyticBenchmark make_environmental();

std::vector<std::string> benchmark_names();
/// Throws InvalidArgument for an unknown name.
AnalyticBenchmark make_benchmark(const std::string& name, double noise_sigma = 0.0);

}  // namespace lfbo::benchmarks
