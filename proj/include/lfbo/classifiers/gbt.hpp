#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "lfbo/classifiers/classifier.hpp"
#include "lfbo/classifiers/training_set.hpp"

namespace lfbo::classifiers {

struct GbtConfig {
    std::size_t rounds = 100;
    double learning_rate = 0.3;
    std::size_t max_depth = 6;
    double min_child_weight = 1.0;
    double l2_leaf = 1.0;
    /// Unused by exact greedy boosting; kept so every backend shares a seeded config.
    std::uint64_t seed = 0;
};

class RegressionTree {
public:
    struct Node {
        int feature = -1;  // -1 marks a leaf
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        double value = 0.0;
    };

    [[nodiscard]] double predict(const Point& x) const;
    [[nodiscard]] const std::vector<Node>& nodes() const noexcept { return nodes_; }
    std::vector<Node>& nodes() noexcept { return nodes_; }
    [[nodiscard]] std::size_t depth() const;

    friend bool operator==(const RegressionTree&, const RegressionTree&);

private:
    std::vector<Node> nodes_;
};

/// Sum-of-trees log-odds model: C(x) = sigmoid(base_score + sum_t f_t(x)).
class GbtClassifier final : public WeightedClassifier {
public:
    explicit GbtClassifier(SearchSpace space, double base_score = 0.0)
        : space_(std::move(space)), base_score_(base_score) {}

    [[nodiscard]] double predict(const Point& x) const override;
    [[nodiscard]] const SearchSpace& space() const override { return space_; }
    [[nodiscard]] std::string backend() const override { return "gbt"; }

    [[nodiscard]] double margin(const Point& x) const;
    [[nodiscard]] const std::vector<RegressionTree>& trees() const noexcept { return trees_; }
    [[nodiscard]] double base_score() const noexcept { return base_score_; }
    void add_tree(RegressionTree t) { trees_.push_back(std::move(t)); }

    void save(std::ostream& os) const;
    static GbtClassifier load(std::istream& is);

    friend bool operator==(const GbtClassifier& a, const GbtClassifier& b) {
        return a.space_ == b.space_ && a.base_score_ == b.base_score_ && a.trees_ == b.trees_;
    }

private:
    SearchSpace space_;
    double base_score_;
    std::vector<RegressionTree> trees_;
};

/// Newton boosting on the weighted logistic loss. If `loss_history` is given
/// it receives the training loss before the first round and after each round.
GbtClassifier train_gbt(const SearchSpace& space, const WeightedTrainingSet& ts, const GbtConfig& config,
                        std::vector<double>* loss_history = nullptr);

}  // namespace lfbo::classifiers
