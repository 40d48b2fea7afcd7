#include "lfbo/benchmarks/analytic.hpp"

#include <cmath>

#include "lfbo/composite/env_model.hpp"
#include "lfbo/core/errors.hpp"

namespace lfbo::benchmarks {

double synthetic_g(double x) {
    if (!(x >= -1.0 && x <= 1.0)) throw DomainError("synthetic function is defined on [-1, 1]");
    return -std::sin(3.0 * x) - x * x + 0.6 * x;
}

double forrester(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("Forrester function is defined on [0, 1]");
    const double a = 6.0 * x - 2.0;
    return a * a * std::sin(12.0 * x - 4.0);
}

double AnalyticBenchmark::evaluate(const Point& x, std::mt19937_64& rng) const {
    space.validate(x);
    const double v = value(x);
    if (noise_sigma == 0.0) return v;
    std::normal_distribution<double> noise(0.0, noise_sigma);
    return v + noise(rng);
}

Objective AnalyticBenchmark::objective() const {
    return {name, space, [b = *this](const Point& x, std::mt19937_64& rng) { return b.evaluate(x, rng); },
            optimum_value};
}

namespace {

double checked_noise(double sigma) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidArgument("noise standard deviation must be finite and >= 0");
    return sigma;
}

}  // namespace

AnalyticBenchmark make_synthetic1d(double noise_sigma) {
    return {"synthetic1d", SearchSpace::box({{-1.0, 1.0}}), [](const Point& x) { return synthetic_g(x[0]); },
            checked_noise(noise_sigma), kSyntheticMax, {kSyntheticArgmax}};
}

AnalyticBenchmark make_forrester(double noise_sigma) {
    return {"forrester", SearchSpace::box({{0.0, 1.0}}), [](const Point& x) { return -forrester(x[0]); },
            checked_noise(noise_sigma), -kForresterMin, {kForresterArgmin}};
}

AnalyticBenchmark make_environmental() {
    const composite::EnvModelSetup setup;
    const auto& t = setup.truth;
    return {"environmental", setup.space(),
            [truth = t](const Point& x) {
                return -composite::env_objective(composite::EnvModelParams::from_point(x), truth);
            },
            0.0, 0.0, {t.M, t.D, t.K, t.xi}};
}

std::vector<std::string> benchmark_names() { return {"synthetic1d", "forrester", "environmental"}; }

AnalyticBenchmark make_benchmark(const std::string& name, double noise_sigma) {
    if (name == "synthetic1d") return make_synthetic1d(noise_sigma);
    if (name == "forrester") return make_forrester(noise_sigma);
    if (name == "environmental") {
        auto b = make_environmental();
        b.noise_sigma = checked_noise(noise_sigma);
        return b;
    }
    throw InvalidArgument("unknown benchmark '" + name + "'");
}

}  // namespace lfbo::benchmarks
