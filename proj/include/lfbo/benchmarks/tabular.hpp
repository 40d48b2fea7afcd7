#pragma once

#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "lfbo/benchmarks/objective.hpp"

namespace lfbo::benchmarks {

/// CSV layout: header naming the configuration columns then the outcome
/// column; one row per (configuration, sample); configuration cells are
/// integer category codes.
struct TabularSchema {
    /// Category count per configuration column; empty infers max code + 1.
    std::vector<std::size_t> category_counts;
    /// Outcomes are losses; they are negated at ingestion.
    bool minimize = true;
};

class TabularBenchmark {
public:
    TabularBenchmark(SearchSpace space, std::vector<std::string> columns, std::string outcome,
                     std::map<std::vector<int>, std::vector<double>> table);

    [[nodiscard]] const SearchSpace& space() const noexcept { return space_; }
    [[nodiscard]] const std::vector<std::string>& columns() const noexcept { return columns_; }
    /// Stored outcomes of a configuration (maximization convention).
    [[nodiscard]] const std::vector<double>& samples(const Point& x) const;
    /// A uniformly drawn tabulated outcome of the configuration.
    [[nodiscard]] double evaluate(const Point& x, std::mt19937_64& rng) const;
    /// Highest per-configuration mean outcome.
    [[nodiscard]] double best() const noexcept { return best_; }
    [[nodiscard]] const Point& best_config() const noexcept { return best_config_; }
    [[nodiscard]] std::size_t configurations() const noexcept { return table_.size(); }
    [[nodiscard]] Objective objective(const std::string& name) const;

private:
    SearchSpace space_;
    std::vector<std::string> columns_;
    std::string outcome_;
    std::map<std::vector<int>, std::vector<double>> table_;
    double best_ = 0.0;
    Point best_config_;
};

/// Throws ParseError (with row) for malformed rows and SchemaError for
/// configurations outside, or missing from, the declared space.
TabularBenchmark load_tabular(const std::filesystem::path& path, const TabularSchema& schema = {});

}  // namespace lfbo::benchmarks
