#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lfbo/benchmarks/objective.hpp"
#include "lfbo/classifiers/gbt.hpp"
#include "lfbo/classifiers/mlp.hpp"
#include "lfbo/composite/composite.hpp"
#include "lfbo/core/errors.hpp"
#include "lfbo/core/utility.hpp"
#include "lfbo/oracles/gp.hpp"

namespace lfbo::driver {

enum class Method { Lfbo, Bore, GpEi, Random };
enum class Backend { Mlp, Gbt };

std::string to_string(Backend b);

struct BoConfig {
    benchmarks::Objective objective;
    Method method = Method::Lfbo;
    /// Used by Method::Lfbo only.
    Utility utility = Utility::ei();
    double gamma = 1.0 / 3.0;
    bool normalize_weights = true;
    Backend backend = Backend::Mlp;
    classifiers::MlpConfig mlp{};
    classifiers::GbtConfig gbt{};
    oracles::GpHyperparams gp{};
    /// Pick the GP length-scale by marginal likelihood on a small grid each iteration.
    bool gp_refine_length_scale = false;
    std::size_t n_init = 10;
    std::size_t budget = 50;
    std::size_t n_candidates = 4096;
    double epsilon = 0.0;
    std::uint64_t seed = 0;

    /// Throws InvalidArgument for n_init == 0, budget < n_init, etc.
    void validate() const;
    /// e.g. "lfbo-ei", "lfbo-power-1.5", "bore", "gp-ei", "random".
    [[nodiscard]] std::string method_label() const;
};

struct TraceRecord {
    std::size_t iteration = 0;  // 1-based evaluation count
    Point x;
    double y = 0.0;
    double incumbent = 0.0;
    /// max(y* - incumbent, 0).
    double regret = 0.0;
    /// y* - incumbent; negative when a noisy draw beats the tabulated optimum.
    double raw_regret = 0.0;
    bool fallback = false;
    bool uniform = false;
};

struct RegretTrace {
    std::uint64_t seed = 0;
    std::string method;
    std::vector<TraceRecord> records;

    [[nodiscard]] double final_regret() const { return records.empty() ? 0.0 : records.back().regret; }
};

/// Raised when the objective fails mid-run; carries everything evaluated so far.
class BoRunError : public Error {
public:
    BoRunError(const std::string& what, RegretTrace partial) : Error(what), partial_(std::move(partial)) {}
    [[nodiscard]] const RegretTrace& partial() const noexcept { return partial_; }

private:
    RegretTrace partial_;
};

/// |y* - incumbent|.
double immediate_regret(double y_star, double incumbent);

RegretTrace run_bo(const BoConfig& cfg);

struct CompositeBoConfig {
    composite::CompositeObjective objective;
    double optimum = 0.0;
    composite::CompositeConfig model{};
    std::size_t n_init = 10;
    std::size_t budget = 50;
    std::size_t n_candidates = 4096;
    double epsilon = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Grey-box loop: observes h(x), fits the composite head each iteration and
/// records regret on g.
RegretTrace run_composite_bo(const CompositeBoConfig& cfg);

}  // namespace lfbo::driver
