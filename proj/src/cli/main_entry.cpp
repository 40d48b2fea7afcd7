#include <cstring>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lfbo/cli/experiment.hpp"

namespace lfbo::cli {
namespace {

/// Looks for --config before the real parse so that file values become the
/// defaults that explicit flags then override.
std::string find_config_path(int argc, const char* const* argv) {
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) return argv[i + 1];
        if (std::strncmp(argv[i], "--config=", 9) == 0) return argv[i] + 9;
    }
    return {};
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    return j.get<ExperimentConfig>();
}

struct Flags {
    std::string seeds;
    double lambda = 0.0;
    bool print_config = false;
    bool table_maximize = false;
    bool no_normalize = false;
};

void add_common(CLI::App* sub, ExperimentConfig& c, Flags& f, std::string& config_path) {
    sub->add_option("--config", config_path, "JSON config file; explicit flags override its values");
    sub->add_flag("--print-config", f.print_config, "Print the effective configuration as JSON and exit");
    sub->add_option("--benchmark", c.benchmark, "synthetic1d | forrester | environmental");
    sub->add_option("--table", c.table, "Tabular benchmark CSV (overrides --benchmark)");
    sub->add_flag("--table-maximize", f.table_maximize, "Treat the table outcome as a score to maximize");
    sub->add_option("--noise", c.noise, "Observation noise sigma for analytic benchmarks");
    sub->add_option("--method", c.method, "lfbo-ei | lfbo-pi | lfbo-power | bore | gp-ei | random");
    sub->add_option("--backend", c.backend, "mlp | gbt");
    sub->add_option("--gamma", c.gamma, "Quantile parameter gamma in (0, 1)");
    sub->add_option("--lambda", f.lambda, "Exponent of the lfbo-power utility");
    sub->add_flag("--no-normalize", f.no_normalize, "Do not rescale positive weights to mean 1");
    sub->add_option("--budget", c.budget, "Total evaluations per run");
    sub->add_option("--n-init", c.n_init, "Initial uniform evaluations");
    sub->add_option("--candidates", c.n_candidates, "Random-search candidates per proposal");
    sub->add_option("--epsilon", c.epsilon, "Probability of a uniform proposal");
    sub->add_option("--seeds", f.seeds, "Seed list (0,1,2) or inclusive range (0..4)");
    sub->add_option("--out", c.out, "Output directory");
    sub->add_option("--jobs", c.jobs, "Concurrent seed runs");
    sub->add_option("--hidden", c.mlp_hidden, "MLP hidden widths")->delimiter(',');
    sub->add_option("--epochs", c.mlp_epochs, "MLP training epochs");
    sub->add_option("--batch-size", c.mlp_batch, "MLP minibatch size (0 = full batch)");
    sub->add_option("--lr", c.mlp_lr, "MLP learning rate");
    sub->add_option("--weight-decay", c.mlp_weight_decay, "MLP L2 weight decay");
    sub->add_option("--rounds", c.gbt_rounds, "GBT boosting rounds");
    sub->add_option("--gbt-lr", c.gbt_lr, "GBT shrinkage");
    sub->add_option("--max-depth", c.gbt_max_depth, "GBT tree depth");
    sub->add_option("--min-child-weight", c.gbt_min_child_weight, "GBT minimum hessian per leaf");
    sub->add_flag("--gp-refine", c.gp_refine, "Choose the GP length scale by marginal likelihood");
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    ExperimentConfig cfg;
    std::string config_path;
    try {
        config_path = find_config_path(argc, argv);
        if (!config_path.empty()) cfg = load_config_file(config_path);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"Likelihood-free Bayesian optimization experiments"};
    app.require_subcommand(1);
    Flags f;

    auto* run = app.add_subcommand("run", "Run BO on a benchmark and write regret traces");
    auto* eq = app.add_subcommand("equivalence", "Compare fitted acquisitions with closed-form PI and EI");
    auto* comp = app.add_subcommand("composite", "Composite versus plain LFBO on the environmental model");
    auto* abl = app.add_subcommand("ablate", "Sweep gamma or lambda");
    for (auto* sub : {run, eq, comp, abl}) add_common(sub, cfg, f, config_path);

    eq->add_option("--n", cfg.eq_n, "Sample sizes")->delimiter(',');
    eq->add_option("--grid-points", cfg.eq_grid, "Evaluation grid size on [-1, 1]");
    eq->add_option("--eq-epochs", cfg.eq_epochs, "Training epochs per fit");
    eq->add_option("--eq-hidden", cfg.eq_hidden, "Hidden widths")->delimiter(',');

    comp->add_option("--composite-hidden", cfg.composite_hidden, "Composite network hidden widths")->delimiter(',');
    comp->add_option("--composite-epochs", cfg.composite_epochs, "Composite training epochs");
    comp->add_option("--composite-lr", cfg.composite_lr, "Composite learning rate");
    comp->add_flag("--with-gp", cfg.with_gp, "Also run gp-ei");

    abl->add_option("--param", cfg.ablate_param, "gamma | lambda");
    abl->add_option("--grid", cfg.ablate_grid, "Grid values")->delimiter(',');
    abl->add_option("--methods", cfg.ablate_methods, "Methods for a gamma sweep")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        CLI::App* chosen = app.get_subcommands().front();
        cfg.subcommand = chosen->get_name();
        if (chosen->count("--lambda") > 0) cfg.lambda = f.lambda;
        if (chosen->count("--seeds") > 0) cfg.seeds = parse_seeds(f.seeds);
        if (f.table_maximize) cfg.table_minimize = false;
        if (f.no_normalize) cfg.normalize_weights = false;
        if (f.print_config) {
            out << nlohmann::json(cfg).dump(2) << "\n";
            return 0;
        }
        cfg.validate();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (cfg.subcommand == "run") return cmd_run(cfg, out);
        if (cfg.subcommand == "equivalence") return cmd_equivalence(cfg, out);
        if (cfg.subcommand == "composite") return cmd_composite(cfg, out);
        return cmd_ablate(cfg, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace lfbo::cli
