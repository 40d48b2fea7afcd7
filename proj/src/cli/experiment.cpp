#include "lfbo/cli/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "lfbo/benchmarks/analytic.hpp"
#include "lfbo/benchmarks/tabular.hpp"
#include "lfbo/composite/composite.hpp"
#include "lfbo/driver/equivalence.hpp"
#include "lfbo/driver/trace_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace lfbo::cli {
namespace {

const std::set<std::string> kMethods{"lfbo-ei", "lfbo-pi", "lfbo-power", "bore", "gp-ei", "random"};
const std::set<std::string> kBackends{"mlp", "gbt"};

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

void validate_method(const std::string& method, const std::optional<double>& lambda, bool lambda_from_grid) {
    require(kMethods.contains(method), "unknown method '" + method + "'");
    if (lambda_from_grid) return;
    if (method == "lfbo-power") {
        require(lambda.has_value(), "method lfbo-power requires --lambda");
        require(std::isfinite(*lambda) && *lambda >= 0.0, "lambda must be finite and >= 0");
    } else {
        require(!lambda.has_value(), "--lambda is only meaningful with method lfbo-power");
    }
}

std::vector<std::string> ablation_methods(const ExperimentConfig& cfg) {
    if (cfg.ablate_param == "lambda") return {"lfbo-power"};
    if (!cfg.ablate_methods.empty()) return cfg.ablate_methods;
    return {"lfbo-ei", "lfbo-pi"};
}

}  // namespace

void ExperimentConfig::validate() const {
    static const std::set<std::string> subs{"run", "equivalence", "composite", "ablate"};
    require(subs.contains(subcommand), "unknown subcommand '" + subcommand + "'");
    require(kBackends.contains(backend), "unknown backend '" + backend + "'");
    require(gamma > 0.0 && gamma < 1.0, "gamma must lie in (0, 1)");
    require(std::isfinite(noise) && noise >= 0.0, "noise must be >= 0");
    require(epsilon >= 0.0 && epsilon <= 1.0, "epsilon must lie in [0, 1]");
    require(n_init >= 1, "n_init must be >= 1");
    require(budget >= n_init, "budget must be >= n_init");
    require(n_candidates >= 1, "n_candidates must be >= 1");
    require(!seeds.empty(), "at least one seed is required");
    require(jobs >= 1, "jobs must be >= 1");
    require(!out.empty(), "output directory must be set");
    require(mlp_epochs >= 1 && mlp_lr > 0.0 && mlp_weight_decay >= 0.0, "invalid MLP settings");
    require(gbt_rounds >= 1 && gbt_lr > 0.0 && gbt_max_depth >= 1, "invalid GBT settings");
    if (table.empty()) {
        const auto names = benchmarks::benchmark_names();
        require(std::find(names.begin(), names.end(), benchmark) != names.end(),
                "unknown benchmark '" + benchmark + "'");
    }

    if (subcommand == "run") {
        validate_method(method, lambda, false);
    } else if (subcommand == "equivalence") {
        require(!eq_n.empty(), "equivalence needs at least one sample size");
        require(std::all_of(eq_n.begin(), eq_n.end(), [](std::size_t n) { return n >= 2; }),
                "equivalence sample sizes must be >= 2");
        require(eq_grid >= 2, "grid_points must be >= 2");
        require(eq_epochs >= 1, "eq_epochs must be >= 1");
    } else if (subcommand == "composite") {
        require(composite_epochs >= 1 && composite_lr > 0.0, "invalid composite settings");
        try {
            env.truth.validate();
            (void)env.space();
        } catch (const Error& e) {
            throw ConfigError(std::string("invalid environmental model: ") + e.what());
        }
    } else {
        require(ablate_param == "gamma" || ablate_param == "lambda", "ablation parameter must be gamma or lambda");
        require(!ablate_grid.empty(), "ablation grid is empty");
        for (double v : ablate_grid) {
            if (ablate_param == "gamma")
                require(v > 0.0 && v < 1.0, "gamma grid values must lie in (0, 1)");
            else
                require(std::isfinite(v) && v >= 0.0, "lambda grid values must be >= 0");
        }
        for (const auto& m : ablation_methods(*this)) validate_method(m, lambda, ablate_param == "lambda");
    }
}

void to_json(json& j, const ExperimentConfig& c) {
    json ranges = json::array();
    for (const auto& b : c.env.ranges) ranges.push_back({b.lower, b.upper});
    j = json{
        {"subcommand", c.subcommand},
        {"benchmark", c.benchmark},
        {"table", c.table},
        {"table_minimize", c.table_minimize},
        {"noise", c.noise},
        {"method", c.method},
        {"backend", c.backend},
        {"gamma", c.gamma},
        {"lambda", c.lambda ? json(*c.lambda) : json(nullptr)},
        {"normalize_weights", c.normalize_weights},
        {"budget", c.budget},
        {"n_init", c.n_init},
        {"n_candidates", c.n_candidates},
        {"epsilon", c.epsilon},
        {"seeds", c.seeds},
        {"out", c.out},
        {"jobs", c.jobs},
        {"mlp", {{"hidden", c.mlp_hidden},
                 {"epochs", c.mlp_epochs},
                 {"batch_size", c.mlp_batch},
                 {"learning_rate", c.mlp_lr},
                 {"weight_decay", c.mlp_weight_decay}}},
        {"gbt", {{"rounds", c.gbt_rounds},
                 {"learning_rate", c.gbt_lr},
                 {"max_depth", c.gbt_max_depth},
                 {"min_child_weight", c.gbt_min_child_weight}}},
        {"gp_refine", c.gp_refine},
        {"equivalence", {{"n", c.eq_n}, {"grid_points", c.eq_grid}, {"epochs", c.eq_epochs}, {"hidden", c.eq_hidden}}},
        {"composite", {{"hidden", c.composite_hidden},
                       {"epochs", c.composite_epochs},
                       {"learning_rate", c.composite_lr},
                       {"with_gp", c.with_gp},
                       {"env", {{"truth", {{"M", c.env.truth.M},
                                           {"D", c.env.truth.D},
                                           {"K", c.env.truth.K},
                                           {"xi", c.env.truth.xi}}},
                                {"ranges", ranges}}}}},
        {"ablate", {{"param", c.ablate_param}, {"grid", c.ablate_grid}, {"methods", c.ablate_methods}}},
    };
}

namespace {

class Reader {
public:
    Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
        require(j_.is_object(), where_ + " must be an object");
    }

    template <class T>
    void get(const char* key, T& dst) {
        seen_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end()) return;
        try {
            dst = it->template get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(where_ + "." + key + ": " + e.what());
        }
    }

    const json* child(const char* key) {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    void finish() const {
        for (const auto& [k, _] : j_.items())
            require(seen_.contains(k), "unknown config key '" + where_ + "." + k + "'");
    }

private:
    const json& j_;
    std::string where_;
    std::set<std::string> seen_;
};

}  // namespace

void from_json(const json& j, ExperimentConfig& c) {
    Reader r(j, "config");
    r.get("subcommand", c.subcommand);
    r.get("benchmark", c.benchmark);
    r.get("table", c.table);
    r.get("table_minimize", c.table_minimize);
    r.get("noise", c.noise);
    r.get("method", c.method);
    r.get("backend", c.backend);
    r.get("gamma", c.gamma);
    if (const json* l = r.child("lambda")) {
        if (l->is_null())
            c.lambda.reset();
        else if (l->is_number())
            c.lambda = l->get<double>();
        else
            throw ConfigError("config.lambda must be a number or null");
    }
    r.get("normalize_weights", c.normalize_weights);
    r.get("budget", c.budget);
    r.get("n_init", c.n_init);
    r.get("n_candidates", c.n_candidates);
    r.get("epsilon", c.epsilon);
    r.get("seeds", c.seeds);
    r.get("out", c.out);
    r.get("jobs", c.jobs);
    if (const json* m = r.child("mlp")) {
        Reader s(*m, "config.mlp");
        s.get("hidden", c.mlp_hidden);
        s.get("epochs", c.mlp_epochs);
        s.get("batch_size", c.mlp_batch);
        s.get("learning_rate", c.mlp_lr);
        s.get("weight_decay", c.mlp_weight_decay);
        s.finish();
    }
    if (const json* g = r.child("gbt")) {
        Reader s(*g, "config.gbt");
        s.get("rounds", c.gbt_rounds);
        s.get("learning_rate", c.gbt_lr);
        s.get("max_depth", c.gbt_max_depth);
        s.get("min_child_weight", c.gbt_min_child_weight);
        s.finish();
    }
    r.get("gp_refine", c.gp_refine);
    if (const json* e = r.child("equivalence")) {
        Reader s(*e, "config.equivalence");
        s.get("n", c.eq_n);
        s.get("grid_points", c.eq_grid);
        s.get("epochs", c.eq_epochs);
        s.get("hidden", c.eq_hidden);
        s.finish();
    }
    if (const json* cm = r.child("composite")) {
        Reader s(*cm, "config.composite");
        s.get("hidden", c.composite_hidden);
        s.get("epochs", c.composite_epochs);
        s.get("learning_rate", c.composite_lr);
        s.get("with_gp", c.with_gp);
        if (const json* env = s.child("env")) {
            Reader e(*env, "config.composite.env");
            if (const json* t = e.child("truth")) {
                Reader tr(*t, "config.composite.env.truth");
                tr.get("M", c.env.truth.M);
                tr.get("D", c.env.truth.D);
                tr.get("K", c.env.truth.K);
                tr.get("xi", c.env.truth.xi);
                tr.finish();
            }
            if (const json* rg = e.child("ranges")) {
                require(rg->is_array() && rg->size() == c.env.ranges.size(),
                        "config.composite.env.ranges must hold 4 [lower, upper] pairs");
                for (std::size_t k = 0; k < c.env.ranges.size(); ++k) {
                    const auto& pair = (*rg)[k];
                    require(pair.is_array() && pair.size() == 2 && pair[0].is_number() && pair[1].is_number(),
                            "config.composite.env.ranges entries must be [lower, upper]");
                    c.env.ranges[k] = Bounds{pair[0].get<double>(), pair[1].get<double>()};
                }
            }
            e.finish();
        }
        s.finish();
    }
    if (const json* a = r.child("ablate")) {
        Reader s(*a, "config.ablate");
        s.get("param", c.ablate_param);
        s.get("grid", c.ablate_grid);
        s.get("methods", c.ablate_methods);
        s.finish();
    }
    r.finish();
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    auto parse_one = [&](std::string_view s) {
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
            throw ConfigError("invalid seed specification '" + text + "'");
        return v;
    };
    std::vector<std::uint64_t> out;
    if (auto pos = text.find(".."); pos != std::string::npos) {
        const auto lo = parse_one(std::string_view(text).substr(0, pos));
        const auto hi = parse_one(std::string_view(text).substr(pos + 2));
        require(lo <= hi, "seed range '" + text + "' is empty");
        require(hi - lo < 1'000'000, "seed range '" + text + "' is too large");
        for (auto s = lo; s <= hi; ++s) out.push_back(s);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_one(item));
    require(!out.empty(), "no seeds given");
    return out;
}

benchmarks::Objective make_objective(const ExperimentConfig& cfg) {
    if (!cfg.table.empty()) {
        auto tab = benchmarks::load_tabular(cfg.table, benchmarks::TabularSchema{{}, cfg.table_minimize});
        return tab.objective(experiment_name(cfg));
    }
    return benchmarks::make_benchmark(cfg.benchmark, cfg.noise).objective();
}

std::string experiment_name(const ExperimentConfig& cfg) {
    if (!cfg.table.empty()) return fs::path(cfg.table).stem().string();
    return cfg.benchmark;
}

driver::BoConfig make_bo_config(const ExperimentConfig& cfg, const std::string& method, std::uint64_t seed) {
    driver::BoConfig bo{.objective = make_objective(cfg)};
    if (method == "random")
        bo.method = driver::Method::Random;
    else if (method == "gp-ei")
        bo.method = driver::Method::GpEi;
    else if (method == "bore")
        bo.method = driver::Method::Bore;
    else {
        bo.method = driver::Method::Lfbo;
        if (method == "lfbo-ei")
            bo.utility = Utility::ei();
        else if (method == "lfbo-pi")
            bo.utility = Utility::pi();
        else if (method == "lfbo-power")
            bo.utility = Utility::power(cfg.lambda.value_or(1.0));
        else
            throw ConfigError("unknown method '" + method + "'");
    }
    bo.gamma = cfg.gamma;
    bo.normalize_weights = cfg.normalize_weights;
    bo.backend = cfg.backend == "gbt" ? driver::Backend::Gbt : driver::Backend::Mlp;
    bo.mlp = classifiers::MlpConfig{.hidden = cfg.mlp_hidden,
                                    .epochs = cfg.mlp_epochs,
                                    .batch_size = cfg.mlp_batch,
                                    .learning_rate = cfg.mlp_lr,
                                    .weight_decay = cfg.mlp_weight_decay};
    bo.gbt = classifiers::GbtConfig{.rounds = cfg.gbt_rounds,
                                    .learning_rate = cfg.gbt_lr,
                                    .max_depth = cfg.gbt_max_depth,
                                    .min_child_weight = cfg.gbt_min_child_weight};
    bo.gp_refine_length_scale = cfg.gp_refine;
    bo.n_init = cfg.n_init;
    bo.budget = cfg.budget;
    bo.n_candidates = cfg.n_candidates;
    bo.epsilon = cfg.epsilon;
    bo.seed = seed;
    return bo;
}

namespace {

struct Job {
    std::string method_dir;
    std::uint64_t seed;
    std::function<driver::RegretTrace()> run;
};

void warn_negative(const driver::RegretTrace& t, std::ostream& log) {
    for (const auto& r : t.records) {
        if (r.raw_regret < 0.0) {
            log << "warning: " << t.method << " seed " << t.seed << " observed an incumbent above the known optimum"
                << " (raw regret " << driver::format_double(r.raw_regret) << "); reported regret clamped to 0\n";
            return;
        }
    }
}

/// Runs jobs on a worker pool. Each worker writes its own trace file; the
/// return value is false if any job failed (partial traces are still written).
bool run_jobs(std::vector<Job>& jobs, const fs::path& exp_dir, std::size_t workers, std::ostream& log) {
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    bool ok = true;
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            const auto& job = jobs[i];
            const fs::path file = exp_dir / job.method_dir / (std::to_string(job.seed) + ".csv");
            fs::create_directories(file.parent_path());
            try {
                auto trace = job.run();
                driver::write_trace_csv(file, trace);
                std::lock_guard lock(log_mutex);
                warn_negative(trace, log);
                log << job.method_dir << " seed " << job.seed << ": final regret "
                    << driver::format_double(trace.final_regret()) << "\n";
            } catch (const driver::BoRunError& e) {
                driver::write_trace_csv(file, e.partial());
                std::lock_guard lock(log_mutex);
                log << "error: " << job.method_dir << " seed " << job.seed << ": " << e.what() << " (partial trace of "
                    << e.partial().records.size() << " evaluations kept)\n";
                ok = false;
            } catch (const std::exception& e) {
                std::lock_guard lock(log_mutex);
                log << "error: " << job.method_dir << " seed " << job.seed << ": " << e.what() << "\n";
                ok = false;
            }
        }
    };
    const std::size_t n = std::min(workers, jobs.size());
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t k = 0; k < n; ++k) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return ok;
}

std::vector<driver::RegretTrace> read_method_dir(const fs::path& dir) {
    std::vector<driver::RegretTrace> traces;
    const std::string method = dir.filename().string();
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            traces.push_back(driver::read_trace_csv(entry.path(), method));
    }
    return traces;
}

std::vector<fs::path> method_dirs(const fs::path& exp_dir) {
    std::vector<fs::path> dirs;
    if (!fs::exists(exp_dir)) return dirs;
    for (const auto& entry : fs::directory_iterator(exp_dir))
        if (entry.is_directory()) dirs.push_back(entry.path());
    std::sort(dirs.begin(), dirs.end());
    return dirs;
}

std::string ablation_dir_name(const std::string& method, const std::string& param, double value) {
    return method + "_" + param + "_" + driver::format_double(value);
}

std::vector<AblationCell> summarize_ablation_directory(const fs::path& exp_dir) {
    std::vector<AblationCell> cells;
    for (const auto& dir : method_dirs(exp_dir)) {
        const std::string name = dir.filename().string();
        const auto a = name.find('_');
        const auto b = name.rfind('_');
        if (a == std::string::npos || a == b) continue;
        AblationCell cell;
        cell.method = name.substr(0, a);
        cell.param = name.substr(a + 1, b - a - 1);
        cell.value = std::stod(name.substr(b + 1));
        std::vector<double> finals;
        for (const auto& t : read_method_dir(dir)) finals.push_back(t.final_regret());
        cell.n_seeds = finals.size();
        double sum = 0.0;
        for (double f : finals) sum += f;
        cell.mean_final_regret = finals.empty() ? 0.0 : sum / static_cast<double>(finals.size());
        cell.median_final_regret = driver::median(finals);
        cells.push_back(cell);
    }
    std::sort(cells.begin(), cells.end(), [](const AblationCell& x, const AblationCell& y) {
        return std::tie(x.method, x.value) < std::tie(y.method, y.value);
    });
    return cells;
}

void write_ablation_summary(const fs::path& path, const std::vector<AblationCell>& cells) {
    std::ofstream os(path);
    if (!os) throw Error("cannot write '" + path.string() + "'");
    os << "param,value,method,n_seeds,median_final_regret,mean_final_regret\n";
    for (const auto& c : cells)
        os << c.param << ',' << driver::format_double(c.value) << ',' << c.method << ',' << c.n_seeds << ','
           << driver::format_double(c.median_final_regret) << ',' << driver::format_double(c.mean_final_regret)
           << '\n';
}

int finish(bool ok, const fs::path& summary, std::ostream& log) {
    log << "summary written to " << summary.string() << "\n";
    return ok ? 0 : 1;
}

}  // namespace

std::vector<driver::SummaryRow> summarize_directory(const fs::path& experiment_dir) {
    std::vector<driver::RegretTrace> all;
    for (const auto& dir : method_dirs(experiment_dir)) {
        auto traces = read_method_dir(dir);
        all.insert(all.end(), std::make_move_iterator(traces.begin()), std::make_move_iterator(traces.end()));
    }
    return driver::summarize(std::move(all));
}

std::vector<AblationCell> read_ablation_summary(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::string line;
    std::getline(in, line);
    std::vector<AblationCell> cells;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::vector<std::string> c;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) c.push_back(cell);
        if (c.size() != 6) throw ParseError("malformed ablation summary row", row);
        cells.push_back(AblationCell{c[0], std::stod(c[1]), c[2], std::stoull(c[3]), std::stod(c[4]), std::stod(c[5])});
    }
    return cells;
}

int cmd_run(const ExperimentConfig& cfg, std::ostream& log) {
    const fs::path exp_dir = fs::path(cfg.out) / experiment_name(cfg);
    const std::string label = make_bo_config(cfg, cfg.method, 0).method_label();
    std::vector<Job> jobs;
    for (auto seed : cfg.seeds)
        jobs.push_back({label, seed, [&cfg, seed] { return driver::run_bo(make_bo_config(cfg, cfg.method, seed)); }});
    const bool ok = run_jobs(jobs, exp_dir, cfg.jobs, log);
    driver::write_summary_csv(exp_dir / "summary.csv", summarize_directory(exp_dir));
    return finish(ok, exp_dir / "summary.csv", log);
}

int cmd_equivalence(const ExperimentConfig& cfg, std::ostream& log) {
    driver::EquivalenceConfig eq;
    eq.n_values = cfg.eq_n;
    eq.seeds = cfg.seeds;
    eq.grid_points = cfg.eq_grid;
    eq.gamma = cfg.gamma;
    eq.mlp.hidden = cfg.eq_hidden;
    eq.mlp.epochs = cfg.eq_epochs;
    const auto report = driver::run_equivalence_experiment(eq);
    const fs::path dir = fs::path(cfg.out) / "equivalence";
    fs::create_directories(dir);
    driver::write_equivalence_csv(dir / "report.csv", report);
    for (auto n : eq.n_values)
        for (auto m : eq.methods)
            for (auto t : {driver::GroundTruth::PI, driver::GroundTruth::EI})
                log << driver::to_string(m) << "@" << driver::to_string(t) << " n=" << n << ": mean L1 "
                    << driver::format_double(report.mean_error(m, t, n)) << "\n";
    log << "report written to " << (dir / "report.csv").string() << "\n";
    return 0;
}

int cmd_composite(const ExperimentConfig& cfg, std::ostream& log) {
    const fs::path exp_dir = fs::path(cfg.out) / "composite";
    const auto comp = composite::make_env_objective(cfg.env);
    const benchmarks::Objective plain{
        "environmental", comp.space, [comp](const Point& x, std::mt19937_64&) { return comp.g(x); }, 0.0};

    auto plain_cfg = [&](const std::string& method, std::uint64_t seed) {
        auto bo = make_bo_config(cfg, method, seed);
        bo.objective = plain;
        return bo;
    };

    std::vector<Job> jobs;
    for (auto seed : cfg.seeds) {
        jobs.push_back({"composite-lfbo-ei", seed, [&cfg, comp, seed] {
                            driver::CompositeBoConfig c{.objective = comp};
                            c.optimum = 0.0;
                            c.model.hidden = cfg.composite_hidden;
                            c.model.epochs = cfg.composite_epochs;
                            c.model.learning_rate = cfg.composite_lr;
                            c.n_init = cfg.n_init;
                            c.budget = cfg.budget;
                            c.n_candidates = cfg.n_candidates;
                            c.epsilon = cfg.epsilon;
                            c.seed = seed;
                            return driver::run_composite_bo(c);
                        }});
        jobs.push_back({"lfbo-ei", seed, [plain_cfg, seed] { return driver::run_bo(plain_cfg("lfbo-ei", seed)); }});
        if (cfg.with_gp)
            jobs.push_back({"gp-ei", seed, [plain_cfg, seed] { return driver::run_bo(plain_cfg("gp-ei", seed)); }});
    }
    const bool ok = run_jobs(jobs, exp_dir, cfg.jobs, log);
    const auto rows = summarize_directory(exp_dir);
    driver::write_summary_csv(exp_dir / "summary.csv", rows);
    for (const auto& r : rows)
        if (r.iteration == cfg.budget)
            log << r.method << ": log10 of the median final regret " << driver::format_double(r.log10_median_regret) << "\n";
    return finish(ok, exp_dir / "summary.csv", log);
}

int cmd_ablate(const ExperimentConfig& cfg, std::ostream& log) {
    const fs::path exp_dir = fs::path(cfg.out) / (experiment_name(cfg) + "-ablate-" + cfg.ablate_param);
    std::vector<Job> jobs;
    for (const auto& method : ablation_methods(cfg)) {
        for (double v : cfg.ablate_grid) {
            ExperimentConfig cell = cfg;
            if (cfg.ablate_param == "gamma")
                cell.gamma = v;
            else
                cell.lambda = v;
            const auto dir = ablation_dir_name(method, cfg.ablate_param, v);
            for (auto seed : cfg.seeds)
                jobs.push_back({dir, seed, [cell, method, seed] { return driver::run_bo(make_bo_config(cell, method, seed)); }});
        }
    }
    const bool ok = run_jobs(jobs, exp_dir, cfg.jobs, log);
    const auto cells = summarize_ablation_directory(exp_dir);
    write_ablation_summary(exp_dir / "summary.csv", cells);
    for (const auto& c : cells)
        log << c.method << " " << c.param << "=" << driver::format_double(c.value) << ": median final regret "
            << driver::format_double(c.median_final_regret) << "\n";
    return finish(ok, exp_dir / "summary.csv", log);
}

}  // namespace lfbo::cli
