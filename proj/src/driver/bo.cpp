#include "lfbo/driver/bo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "lfbo/acquisition/acquisition.hpp"
#include "lfbo/driver/seeds.hpp"

namespace lfbo::driver {

namespace {

using acquisition::BatchScorer;
using acquisition::CandidateProposal;

class TraceRecorder {
public:
    TraceRecorder(std::uint64_t seed, std::string method, double y_star) : y_star_(y_star) {
        trace_.seed = seed;
        trace_.method = std::move(method);
    }

    void record(Point x, double y, bool fallback, bool uniform) {
        incumbent_ = std::max(incumbent_, y);
        TraceRecord r;
        r.iteration = trace_.records.size() + 1;
        r.x = std::move(x);
        r.y = y;
        r.incumbent = incumbent_;
        r.raw_regret = y_star_ - incumbent_;
        r.regret = std::max(r.raw_regret, 0.0);
        r.fallback = fallback;
        r.uniform = uniform;
        trace_.records.push_back(std::move(r));
    }

    [[nodiscard]] const RegretTrace& trace() const noexcept { return trace_; }
    RegretTrace take() { return std::move(trace_); }

private:
    double y_star_;
    double incumbent_ = -std::numeric_limits<double>::infinity();
    RegretTrace trace_;
};

// Scorer for the current iteration, or empty when the fit is degenerate.
BatchScorer fit_scorer(const BoConfig& cfg, const Dataset& ds, std::size_t iteration) {
    const auto ys = ds.outcomes();
    const std::uint64_t model_seed = derive_seed(cfg.seed, stream::kModel, iteration);

    if (cfg.method == Method::GpEi) {
        double mean = 0.0;
        for (double y : ys) mean += y;
        mean /= static_cast<double>(ys.size());
        double var = 0.0;
        for (double y : ys) var += (y - mean) * (y - mean);
        var /= static_cast<double>(ys.size());
        const double sd = var > 1e-300 ? std::sqrt(var) : 1.0;
        Dataset standardized(ds.space());
        for (const auto& o : ds.observations()) standardized.add(o.x, (o.y - mean) / sd);
        auto hp = cfg.gp;
        if (cfg.gp_refine_length_scale) {
            const double grid[] = {0.05, 0.1, 0.2, 0.5, 1.0, 2.0};
            hp = oracles::refine_length_scale(standardized, hp, grid);
        }
        auto gp = std::make_shared<oracles::GpModel>(oracles::gp_fit(standardized, hp));
        const double best = (*std::max_element(ys.begin(), ys.end()) - mean) / sd;
        return [gp, best](std::span<const Point> xs) {
            std::vector<double> out;
            out.reserve(xs.size());
            for (const auto& x : xs) out.push_back(oracles::gp_ei_acq(*gp, x, best));
            return out;
        };
    }

    const double tau = select_threshold(ys, ThresholdPolicy{cfg.gamma});
    classifiers::WeightedTrainingSet ts;
    if (cfg.method == Method::Bore) {
        std::vector<bool> labels;
        for (double y : ys) labels.push_back(y > tau);
        ts = classifiers::WeightedTrainingSet::labelled(ds.points(), labels);
    } else {
        ts = classifiers::WeightedTrainingSet::utility_weighted(
            ds.points(), build_weights(ys, cfg.utility, tau, cfg.normalize_weights));
    }
    if (!ts.has_positive()) return {};

    classifiers::ClassifierPtr clf;
    if (cfg.backend == Backend::Mlp) {
        auto mc = cfg.mlp;
        mc.seed = model_seed;
        clf = std::make_shared<classifiers::MlpClassifier>(classifiers::train_mlp(ds.space(), ts, mc));
    } else {
        auto gc = cfg.gbt;
        gc.seed = model_seed;
        clf = std::make_shared<classifiers::GbtClassifier>(classifiers::train_gbt(ds.space(), ts, gc));
    }
    auto model = std::make_shared<acquisition::AcquisitionModel>(
        acquisition::AcquisitionModel{clf, cfg.method == Method::Bore ? Utility::pi() : cfg.utility, tau, cfg.gamma});
    return [model](std::span<const Point> xs) { return model->values(xs); };
}

// Random-search argmax of `score`, wrapped epsilon-greedily.
CandidateProposal propose(const BatchScorer& score, const SearchSpace& space, std::size_t n_candidates,
                          double epsilon, std::uint64_t seed, std::size_t iteration) {
    acquisition::ProposalFn search = [&] {
        return acquisition::maximize_random_search(score, space, n_candidates,
                                                   derive_seed(seed, stream::kCandidates, iteration));
    };
    auto wrapped =
        acquisition::epsilon_greedy_wrap(search, space, score, epsilon, derive_seed(seed, stream::kEpsilon, iteration));
    return wrapped();
}

std::string format_lambda(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

std::string to_string(Backend b) { return b == Backend::Mlp ? "mlp" : "gbt"; }

void BoConfig::validate() const {
    if (!objective.evaluate) throw InvalidArgument("objective has no evaluation function");
    if (n_init == 0) throw InvalidArgument("n_init must be at least 1");
    if (budget < n_init) throw InvalidArgument("budget must be at least n_init");
    if (n_candidates == 0) throw InvalidArgument("n_candidates must be at least 1");
    if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidArgument("gamma must lie in (0,1)");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw InvalidArgument("epsilon must lie in [0,1]");
}

std::string BoConfig::method_label() const {
    switch (method) {
        case Method::Random: return "random";
        case Method::GpEi: return "gp-ei";
        case Method::Bore: return "bore";
        case Method::Lfbo:
            switch (utility.kind()) {
                case Utility::Kind::EI: return "lfbo-ei";
                case Utility::Kind::PI: return "lfbo-pi";
                case Utility::Kind::Power: return "lfbo-power-" + format_lambda(utility.lambda());
            }
    }
    return "unknown";
}

double immediate_regret(double y_star, double incumbent) { return std::abs(y_star - incumbent); }

RegretTrace run_bo(const BoConfig& cfg) {
    cfg.validate();
    const auto& space = cfg.objective.space;
    std::mt19937_64 init_rng(derive_seed(cfg.seed, stream::kInit));
    std::mt19937_64 noise_rng(derive_seed(cfg.seed, stream::kNoise));
    TraceRecorder rec(cfg.seed, cfg.method_label(), cfg.objective.optimum);
    Dataset ds(space);

    for (std::size_t it = 0; it < cfg.budget; ++it) {
        Point x;
        bool fallback = false, uniform = false;
        if (it < cfg.n_init || cfg.method == Method::Random) {
            x = space.sample_uniform(init_rng);
            uniform = true;
        } else if (auto score = fit_scorer(cfg, ds, it)) {
            auto p = propose(score, space, cfg.n_candidates, cfg.epsilon, cfg.seed, it);
            uniform = p.source == acquisition::ProposalSource::EpsilonGreedyUniform;
            x = std::move(p.x);
        } else {
            x = space.sample_uniform(init_rng);
            fallback = uniform = true;
        }
        double y = 0.0;
        try {
            y = cfg.objective.evaluate(x, noise_rng);
            if (!std::isfinite(y)) throw NumericalError("objective returned a non-finite value");
        } catch (const std::exception& e) {
            throw BoRunError(std::string("objective evaluation failed at iteration ") + std::to_string(it + 1) +
                                 ": " + e.what(),
                             rec.take());
        }
        ds.add(x, y);
        rec.record(std::move(x), y, fallback, uniform);
    }
    return rec.take();
}

void CompositeBoConfig::validate() const {
    if (!objective.h) throw InvalidArgument("composite objective has no black box");
    if (n_init == 0) throw InvalidArgument("n_init must be at least 1");
    if (budget < n_init) throw InvalidArgument("budget must be at least n_init");
    if (n_candidates == 0) throw InvalidArgument("n_candidates must be at least 1");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw InvalidArgument("epsilon must lie in [0,1]");
}

RegretTrace run_composite_bo(const CompositeBoConfig& cfg) {
    cfg.validate();
    const auto& space = cfg.objective.space;
    std::mt19937_64 init_rng(derive_seed(cfg.seed, stream::kInit));
    TraceRecorder rec(cfg.seed, "composite-lfbo-ei", cfg.optimum);
    std::vector<composite::VectorObservation> data;

    for (std::size_t it = 0; it < cfg.budget; ++it) {
        Point x;
        bool fallback = false, uniform = false;
        const bool init = it < cfg.n_init;
        double tau = 0.0;
        if (!init) {
            tau = composite::composite_threshold(data, cfg.objective.z_star);
            const auto g = composite::composite_outcomes(data, cfg.objective.z_star);
            fallback = std::none_of(g.begin(), g.end(), [tau](double v) { return v > tau; });
        }
        if (init || fallback) {
            x = space.sample_uniform(init_rng);
            uniform = true;
        } else {
            auto mc = cfg.model;
            mc.seed = derive_seed(cfg.seed, stream::kModel, it);
            auto model = std::make_shared<composite::CompositeClassifier>(
                composite::train_composite(space, data, cfg.objective.z_star, tau, mc));
            BatchScorer score = [model](std::span<const Point> xs) { return model->acquisition(xs); };
            auto p = propose(score, space, cfg.n_candidates, cfg.epsilon, cfg.seed, it);
            uniform = p.source == acquisition::ProposalSource::EpsilonGreedyUniform;
            x = std::move(p.x);
        }
        std::vector<double> h;
        double y = 0.0;
        try {
            h = cfg.objective.h(x);
            y = cfg.objective.g_from_h(h);
            if (!std::isfinite(y)) throw NumericalError("black box returned a non-finite value");
        } catch (const std::exception& e) {
            throw BoRunError(std::string("black-box evaluation failed at iteration ") + std::to_string(it + 1) +
                                 ": " + e.what(),
                             rec.take());
        }
        data.push_back({x, std::move(h)});
        rec.record(std::move(x), y, fallback, uniform);
    }
    return rec.take();
}

}  // namespace lfbo::driver
