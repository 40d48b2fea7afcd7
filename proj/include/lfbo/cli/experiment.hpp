#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lfbo/composite/env_model.hpp"
#include "lfbo/driver/bo.hpp"
#include "lfbo/driver/trace_io.hpp"

namespace lfbo::cli {

/// Thrown for configurations that fail validation (exit status 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

struct ExperimentConfig {
    std::string subcommand = "run";

    // objective
    std::string benchmark = "synthetic1d";
    std::string table;  // CSV path; overrides `benchmark` when set
    bool table_minimize = true;
    double noise = 0.0;

    // method
    std::string method = "lfbo-ei";
    std::string backend = "mlp";
    double gamma = 1.0 / 3.0;
    std::optional<double> lambda;
    bool normalize_weights = true;

    // loop
    std::size_t budget = 50;
    std::size_t n_init = 10;
    std::size_t n_candidates = 4096;
    double epsilon = 0.0;
    std::vector<std::uint64_t> seeds{0};
    std::string out = "results";
    std::size_t jobs = 1;

    // classifiers
    std::vector<std::size_t> mlp_hidden{32, 32};
    std::size_t mlp_epochs = 200;
    std::size_t mlp_batch = 64;
    double mlp_lr = 0.01;
    double mlp_weight_decay = 0.0;
    std::size_t gbt_rounds = 100;
    double gbt_lr = 0.3;
    std::size_t gbt_max_depth = 6;
    double gbt_min_child_weight = 1.0;
    bool gp_refine = false;

    // equivalence
    std::vector<std::size_t> eq_n{100, 1000, 10000};
    std::size_t eq_grid = 1001;
    std::size_t eq_epochs = 1000;
    std::vector<std::size_t> eq_hidden{128, 128};

    // composite
    composite::EnvModelSetup env{};
    std::vector<std::size_t> composite_hidden{64, 64};
    std::size_t composite_epochs = 1000;
    double composite_lr = 0.01;
    bool with_gp = false;

    // ablation
    std::string ablate_param = "gamma";
    std::vector<double> ablate_grid;
    std::vector<std::string> ablate_methods;

    /// Throws ConfigError describing the first invalid setting.
    void validate() const;
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
/// Missing keys keep their defaults; unknown keys are rejected.
void from_json(const nlohmann::json& j, ExperimentConfig& c);

/// "0..4" (inclusive range) or "0,3,7".
std::vector<std::uint64_t> parse_seeds(const std::string& text);

/// Driver configuration for one method label and seed.
driver::BoConfig make_bo_config(const ExperimentConfig& cfg, const std::string& method, std::uint64_t seed);
benchmarks::Objective make_objective(const ExperimentConfig& cfg);
std::string experiment_name(const ExperimentConfig& cfg);

/// Subcommands; each returns the process exit status (0 ok, 1 runtime failure).
int cmd_run(const ExperimentConfig& cfg, std::ostream& log);
int cmd_equivalence(const ExperimentConfig& cfg, std::ostream& log);
int cmd_composite(const ExperimentConfig& cfg, std::ostream& log);
int cmd_ablate(const ExperimentConfig& cfg, std::ostream& log);

/// Full entry point: parses argv, dispatches, maps errors to exit codes.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Rebuilds the per-iteration summary from every trace under `experiment_dir`.
std::vector<driver::SummaryRow> summarize_directory(const std::filesystem::path& experiment_dir);

struct AblationCell {
    std::string param;
    double value;
    std::string method;
    std::size_t n_seeds;
    double median_final_regret;
    double mean_final_regret;
};
std::vector<AblationCell> read_ablation_summary(const std::filesystem::path& path);

}  // namespace lfbo::cli
