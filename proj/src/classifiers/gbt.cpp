#include "lfbo/classifiers/gbt.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include "../common/text_io.hpp"
#include "lfbo/classifiers/loss.hpp"
#include "lfbo/core/errors.hpp"

namespace lfbo::classifiers {

double RegressionTree::predict(const Point& x) const {
    if (nodes_.empty()) return 0.0;
    int k = 0;
    while (nodes_[static_cast<std::size_t>(k)].feature >= 0) {
        const auto& n = nodes_[static_cast<std::size_t>(k)];
        k = x[static_cast<std::size_t>(n.feature)] < n.threshold ? n.left : n.right;
    }
    return nodes_[static_cast<std::size_t>(k)].value;
}

std::size_t RegressionTree::depth() const {
    if (nodes_.empty()) return 0;
    std::size_t best = 0;
    std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [k, d] = stack.back();
        stack.pop_back();
        const auto& n = nodes_[static_cast<std::size_t>(k)];
        best = std::max(best, d);
        if (n.feature >= 0) {
            stack.push_back({n.left, d + 1});
            stack.push_back({n.right, d + 1});
        }
    }
    return best;
}

bool operator==(const RegressionTree& a, const RegressionTree& b) {
    if (a.nodes_.size() != b.nodes_.size()) return false;
    for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
        const auto& x = a.nodes_[i];
        const auto& y = b.nodes_[i];
        if (x.feature != y.feature || x.threshold != y.threshold || x.left != y.left || x.right != y.right ||
            x.value != y.value)
            return false;
    }
    return true;
}

double GbtClassifier::margin(const Point& x) const {
    space_.validate(x);
    double m = base_score_;
    for (const auto& t : trees_) m += t.predict(x);
    return m;
}

double GbtClassifier::predict(const Point& x) const { return clamped_sigmoid(margin(x)); }

void GbtClassifier::save(std::ostream& os) const {
    os << "lfbo-gbt 1\n";
    detail::write_space(os, space_);
    os << "base ";
    detail::write_double(os, base_score_);
    os << "\ntrees " << trees_.size() << '\n';
    for (const auto& t : trees_) {
        os << "tree " << t.nodes().size() << '\n';
        for (const auto& n : t.nodes()) {
            os << n.feature << ' ';
            detail::write_double(os, n.threshold);
            os << ' ' << n.left << ' ' << n.right << ' ';
            detail::write_double(os, n.value);
            os << '\n';
        }
    }
}

GbtClassifier GbtClassifier::load(std::istream& is) {
    detail::expect_token(is, "lfbo-gbt");
    if (detail::read_size(is) != 1) throw ParseError("unsupported gbt model version");
    auto space = detail::read_space(is);
    detail::expect_token(is, "base");
    GbtClassifier model(std::move(space), detail::read_double(is));
    detail::expect_token(is, "trees");
    const auto count = detail::read_size(is);
    auto read_int = [&is] {
        const auto tok = detail::read_token(is);
        return std::stoi(tok);
    };
    for (std::size_t t = 0; t < count; ++t) {
        detail::expect_token(is, "tree");
        RegressionTree tree;
        const auto n = detail::read_size(is);
        for (std::size_t k = 0; k < n; ++k) {
            RegressionTree::Node node;
            node.feature = read_int();
            node.threshold = detail::read_double(is);
            node.left = read_int();
            node.right = read_int();
            node.value = detail::read_double(is);
            tree.nodes().push_back(node);
        }
        model.add_tree(std::move(tree));
    }
    return model;
}

namespace {

// Exact greedy tree growth on per-point gradient/hessian statistics.
class TreeBuilder {
public:
    TreeBuilder(const std::vector<Point>& x, const std::vector<double>& g, const std::vector<double>& h,
                const GbtConfig& cfg)
        : x_(x), g_(g), h_(h), cfg_(cfg) {}

    RegressionTree build() {
        std::vector<std::size_t> all(x_.size());
        std::iota(all.begin(), all.end(), std::size_t{0});
        grow(all, 0);
        return std::move(tree_);
    }

private:
    struct Split {
        double gain = 0.0;
        int feature = -1;
        double threshold = 0.0;
    };

    [[nodiscard]] double score(double G, double H) const { return G * G / (H + cfg_.l2_leaf); }

    Split best_split(std::vector<std::size_t>& rows, double G, double H) const {
        Split best;
        const std::size_t dims = x_.front().size();
        const double parent = score(G, H);
        for (std::size_t f = 0; f < dims; ++f) {
            std::stable_sort(rows.begin(), rows.end(),
                             [&](std::size_t a, std::size_t b) { return x_[a][f] < x_[b][f]; });
            double GL = 0.0, HL = 0.0;
            for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
                GL += g_[rows[k]];
                HL += h_[rows[k]];
                const double lo = x_[rows[k]][f];
                const double hi = x_[rows[k + 1]][f];
                if (!(lo < hi)) continue;
                const double GR = G - GL, HR = H - HL;
                if (HL < cfg_.min_child_weight || HR < cfg_.min_child_weight) continue;
                const double gain = score(GL, HL) + score(GR, HR) - parent;
                if (gain > best.gain + 1e-12) {
                    best.gain = gain;
                    best.feature = static_cast<int>(f);
                    best.threshold = lo + 0.5 * (hi - lo);
                }
            }
        }
        return best;
    }

    int grow(std::vector<std::size_t>& rows, std::size_t depth) {
        double G = 0.0, H = 0.0;
        for (auto r : rows) {
            G += g_[r];
            H += h_[r];
        }
        const int id = static_cast<int>(tree_.nodes().size());
        tree_.nodes().push_back({});
        Split split;
        if (depth < cfg_.max_depth && rows.size() > 1) split = best_split(rows, G, H);
        if (split.feature < 0) {
            tree_.nodes()[static_cast<std::size_t>(id)].value = -cfg_.learning_rate * G / (H + cfg_.l2_leaf);
            return id;
        }
        std::vector<std::size_t> left, right;
        for (auto r : rows)
            (x_[r][static_cast<std::size_t>(split.feature)] < split.threshold ? left : right).push_back(r);
        const int l = grow(left, depth + 1);
        const int r = grow(right, depth + 1);
        auto& node = tree_.nodes()[static_cast<std::size_t>(id)];
        node.feature = split.feature;
        node.threshold = split.threshold;
        node.left = l;
        node.right = r;
        return id;
    }

    const std::vector<Point>& x_;
    const std::vector<double>& g_;
    const std::vector<double>& h_;
    const GbtConfig& cfg_;
    RegressionTree tree_;
};

double mean_loss(const std::vector<double>& margins, const WeightedTrainingSet& ts) {
    double total = 0.0;
    for (std::size_t i = 0; i < margins.size(); ++i)
        total += logit_loss(margins[i], ts.pos_weights[i], ts.neg_weight(i)).value;
    return total / static_cast<double>(margins.size());
}

}  // namespace

GbtClassifier train_gbt(const SearchSpace& space, const WeightedTrainingSet& ts, const GbtConfig& config,
                        std::vector<double>* loss_history) {
    ts.validate_for_training();
    for (const auto& x : ts.points) space.validate(x);
    GbtClassifier model(space, 0.0);
    const std::size_t n = ts.size();
    std::vector<double> margin(n, model.base_score()), g(n), h(n);
    if (loss_history) loss_history->assign(1, mean_loss(margin, ts));

    for (std::size_t round = 0; round < config.rounds; ++round) {
        // Each point stands for a positive instance of weight w+ and a negative
        // instance of weight w-; their logistic statistics add.
        for (std::size_t i = 0; i < n; ++i) {
            const double p = 1.0 / (1.0 + std::exp(-margin[i]));
            const double wp = ts.pos_weights[i], wn = ts.neg_weight(i);
            g[i] = wn * p - wp * (1.0 - p);
            h[i] = (wp + wn) * p * (1.0 - p);
        }
        auto tree = TreeBuilder(ts.points, g, h, config).build();
        for (std::size_t i = 0; i < n; ++i) margin[i] += tree.predict(ts.points[i]);
        model.add_tree(std::move(tree));
        if (loss_history) loss_history->push_back(mean_loss(margin, ts));
    }
    return model;
}

}  // namespace lfbo::classifiers
