#pragma once

#include <array>
#include <vector>

#include "lfbo/core/search_space.hpp"

namespace lfbo::composite {

/// Two-spill pollutant model parameters: mass M, diffusion rate D, location
/// K of the second spill and its time xi.
struct EnvModelParams {
    double M = 10.0;
    double D = 0.07;
    double K = 1.505;
    double xi = 30.1525;

    /// Throws InvalidArgument unless M, D, xi > 0 and all entries finite.
    void validate() const;
    [[nodiscard]] static EnvModelParams from_point(const Point& x);
};

inline constexpr std::array<double, 3> kEnvLocations{0.0, 1.0, 2.5};
inline constexpr std::array<double, 4> kEnvTimes{15.0, 30.0, 45.0, 60.0};
inline constexpr std::size_t kEnvOutputs = kEnvLocations.size() * kEnvTimes.size();

/// Concentration at location a and time b > 0. Throws DomainError for b <= 0.
double env_concentration(double a, double b, const EnvModelParams& p);

/// Concentrations on the 3 x 4 (location, time) grid, location-major.
std::vector<double> env_field(const EnvModelParams& p);

/// Sum of squared differences between the two fields on the grid.
double env_objective(const EnvModelParams& p, const EnvModelParams& p0);

/// Search ranges for (M, D, K, xi) and the true parameters.
struct EnvModelSetup {
    EnvModelParams truth{};
    std::array<Bounds, 4> ranges{Bounds{7.0, 13.0}, Bounds{0.02, 0.12}, Bounds{0.01, 3.0}, Bounds{30.01, 30.295}};

    [[nodiscard]] SearchSpace space() const;
};

}  // namespace lfbo::composite
