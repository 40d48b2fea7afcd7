#include "lfbo/driver/equivalence.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "lfbo/acquisition/acquisition.hpp"
#include "lfbo/benchmarks/analytic.hpp"
#include "lfbo/core/errors.hpp"
#include "lfbo/core/utility.hpp"
#include "lfbo/driver/seeds.hpp"
#include "lfbo/oracles/gaussian.hpp"

namespace lfbo::driver {

std::string to_string(EquivalenceMethod m) {
    switch (m) {
        case EquivalenceMethod::LfboEi: return "lfbo-ei";
        case EquivalenceMethod::LfboPi: return "lfbo-pi";
        case EquivalenceMethod::Bore: return "bore";
    }
    return "?";
}

std::string to_string(GroundTruth t) { return t == GroundTruth::PI ? "pi" : "ei"; }

std::string EquivalenceRow::label() const { return to_string(method) + "@" + to_string(truth); }

double EquivalenceReport::mean_error(EquivalenceMethod m, GroundTruth t, std::size_t n) const {
    double total = 0.0;
    std::size_t count = 0;
    for (const auto& r : rows)
        if (r.method == m && r.truth == t && r.n == n) {
            total += r.l1_error;
            ++count;
        }
    return count ? total / static_cast<double>(count) : std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> equivalence_grid(std::size_t points) {
    if (points < 2) throw InvalidArgument("evaluation grid needs at least two points");
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(points - 1);
    return grid;
}

EquivalenceFit fit_equivalence_method(EquivalenceMethod m, std::size_t n, std::uint64_t seed,
                                      const EquivalenceConfig& cfg, const std::vector<double>& grid) {
    const auto space = SearchSpace::box({{-1.0, 1.0}});
    // Same data for every method at a given (n, seed).
    std::mt19937_64 rng(derive_seed(seed, stream::kData, n));
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    std::normal_distribution<double> noise(0.0, cfg.noise_sigma);
    std::vector<Point> xs(n);
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = {ux(rng)};
        ys[i] = benchmarks::synthetic_g(xs[i][0]) + noise(rng);
    }
    const double tau = select_threshold(ys, ThresholdPolicy{cfg.gamma});

    classifiers::WeightedTrainingSet ts;
    double scale = 1.0;
    std::size_t positives = 0;
    for (double y : ys) positives += y > tau ? 1 : 0;
    if (m == EquivalenceMethod::Bore) {
        std::vector<bool> labels;
        for (double y : ys) labels.push_back(y > tau);
        ts = classifiers::WeightedTrainingSet::labelled(xs, labels);
    } else {
        const auto u = m == EquivalenceMethod::LfboEi ? Utility::ei() : Utility::pi();
        auto raw = build_weights(ys, u, tau, false);
        double sum = 0.0;
        for (double w : raw) sum += w;
        // Train on mean-one weights and undo the normalization afterwards.
        scale = positives ? sum / static_cast<double>(positives) : 1.0;
        for (auto& w : raw) w /= scale;
        ts = classifiers::WeightedTrainingSet::utility_weighted(xs, std::move(raw));
    }

    auto mc = cfg.mlp;
    mc.seed = derive_seed(seed, stream::kModel, n);
    const auto clf = classifiers::train_mlp(space, ts, mc);

    std::vector<Point> pts;
    pts.reserve(grid.size());
    for (double g : grid) pts.push_back({g});
    const auto probs = clf.predict_batch(pts);

    EquivalenceFit fit{{}, tau};
    fit.estimate.reserve(grid.size());
    const double gamma_hat = static_cast<double>(positives) / static_cast<double>(n);
    for (double c : probs) {
        if (m == EquivalenceMethod::Bore) {
            const double ratio = acquisition::bore_density_ratio(c, gamma_hat);
            fit.estimate.push_back(acquisition::bore_to_pi_transform(ratio, gamma_hat));
        } else {
            fit.estimate.push_back(scale * acquisition::odds(c));
        }
    }
    return fit;
}

EquivalenceReport run_equivalence_experiment(const EquivalenceConfig& cfg) {
    const auto grid = equivalence_grid(cfg.grid_points);
    for (double g : grid)
        if (g < -1.0 || g > 1.0) throw InvalidArgument("evaluation grid must lie within [-1, 1]");
    EquivalenceReport report;
    for (auto n : cfg.n_values) {
        if (n < 2) throw InvalidArgument("equivalence sample size must be at least 2");
        for (auto seed : cfg.seeds) {
            for (auto m : cfg.methods) {
                const auto fit = fit_equivalence_method(m, n, seed, cfg, grid);
                for (auto truth : {GroundTruth::PI, GroundTruth::EI}) {
                    double err = 0.0;
                    for (std::size_t i = 0; i < grid.size(); ++i) {
                        const auto b = oracles::GaussianBelief{benchmarks::synthetic_g(grid[i]), cfg.noise_sigma};
                        const double t = truth == GroundTruth::PI ? oracles::true_pi(b, fit.tau)
                                                                  : oracles::true_ei(b, fit.tau);
                        err += std::abs(fit.estimate[i] - t);
                    }
                    report.rows.push_back({m, truth, n, seed, err / static_cast<double>(grid.size())});
                }
            }
        }
    }
    return report;
}

}  // namespace lfbo::driver
