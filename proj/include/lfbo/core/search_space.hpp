#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace lfbo {

/// A point in a search space. Categorical coordinates are stored as integer
/// codes in double precision.
using Point = std::vector<double>;

struct Bounds {
    double lower;
    double upper;
};

struct CategoricalDim {
    std::size_t index;
    std::size_t count;
};

/// Box-bounded search space with optional integer-coded categorical dims.
class SearchSpace {
public:
    SearchSpace() = default;

    /// `bounds` has one entry per dimension; the bounds of dims listed in
    /// `categorical` are ignored.
    explicit SearchSpace(std::vector<Bounds> bounds, std::vector<CategoricalDim> categorical = {});

    /// Convenience: purely continuous box.
    static SearchSpace box(std::vector<Bounds> bounds) { return SearchSpace(std::move(bounds)); }

    /// Convenience: purely categorical space with the given category counts.
    static SearchSpace categorical(const std::vector<std::size_t>& counts);

    [[nodiscard]] std::size_t dims() const noexcept { return bounds_.size(); }
    [[nodiscard]] bool is_categorical(std::size_t dim) const { return counts_.at(dim) > 0; }
    /// Category count of a categorical dim, 0 for continuous dims.
    [[nodiscard]] std::size_t category_count(std::size_t dim) const { return counts_.at(dim); }
    [[nodiscard]] const Bounds& bounds(std::size_t dim) const { return bounds_.at(dim); }
    [[nodiscard]] std::vector<CategoricalDim> categorical_dims() const;

    [[nodiscard]] bool contains(std::span<const double> x) const;
    /// Throws DomainError naming the offending coordinate if `x` is invalid.
    void validate(std::span<const double> x) const;

    [[nodiscard]] Point sample_uniform(std::mt19937_64& rng) const;

    /// Maps a continuous coordinate to [0,1]; categorical codes pass through.
    [[nodiscard]] double normalize(std::size_t dim, double value) const;

    /// Width of the encoded feature vector: one slot per continuous dim and
    /// one-hot slots for each categorical dim.
    [[nodiscard]] std::size_t one_hot_width() const;
    /// Continuous coords scaled to [0,1], categorical coords one-hot.
    void encode_one_hot(std::span<const double> x, std::span<double> out) const;

    friend bool operator==(const SearchSpace& a, const SearchSpace& b);

private:
    std::vector<Bounds> bounds_;
    std::vector<std::size_t> counts_;
};

}  // namespace lfbo
