#include "lfbo/core/search_space.hpp"

#include <cmath>
#include <string>

#include "lfbo/core/errors.hpp"

namespace lfbo {

SearchSpace::SearchSpace(std::vector<Bounds> bounds, std::vector<CategoricalDim> categorical)
    : bounds_(std::move(bounds)), counts_(bounds_.size(), 0) {
    if (bounds_.empty()) throw InvalidArgument("search space needs at least one dimension");
    for (const auto& c : categorical) {
        if (c.index >= bounds_.size())
            throw InvalidArgument("categorical dim index " + std::to_string(c.index) + " out of range");
        if (c.count < 2)
            throw InvalidArgument("categorical dim " + std::to_string(c.index) + " needs at least 2 categories");
        counts_[c.index] = c.count;
        bounds_[c.index] = {0.0, static_cast<double>(c.count - 1)};
    }
    for (std::size_t d = 0; d < bounds_.size(); ++d) {
        if (counts_[d] > 0) continue;
        const auto& b = bounds_[d];
        if (!std::isfinite(b.lower) || !std::isfinite(b.upper) || !(b.lower < b.upper))
            throw InvalidArgument("dimension " + std::to_string(d) + " needs finite lower < upper");
    }
}

SearchSpace SearchSpace::categorical(const std::vector<std::size_t>& counts) {
    std::vector<Bounds> bounds(counts.size(), Bounds{0.0, 1.0});
    std::vector<CategoricalDim> cats;
    for (std::size_t d = 0; d < counts.size(); ++d) cats.push_back({d, counts[d]});
    return SearchSpace(std::move(bounds), std::move(cats));
}

std::vector<CategoricalDim> SearchSpace::categorical_dims() const {
    std::vector<CategoricalDim> out;
    for (std::size_t d = 0; d < counts_.size(); ++d)
        if (counts_[d] > 0) out.push_back({d, counts_[d]});
    return out;
}

namespace {

bool coordinate_ok(double v, const Bounds& b, std::size_t count) {
    if (!std::isfinite(v)) return false;
    if (count > 0) return v == std::floor(v) && v >= 0.0 && v < static_cast<double>(count);
    return v >= b.lower && v <= b.upper;
}

}  // namespace

bool SearchSpace::contains(std::span<const double> x) const {
    if (x.size() != dims()) return false;
    for (std::size_t d = 0; d < x.size(); ++d)
        if (!coordinate_ok(x[d], bounds_[d], counts_[d])) return false;
    return true;
}

void SearchSpace::validate(std::span<const double> x) const {
    if (x.size() != dims())
        throw DomainError("point has " + std::to_string(x.size()) + " coordinates, space has " +
                          std::to_string(dims()));
    for (std::size_t d = 0; d < x.size(); ++d)
        if (!coordinate_ok(x[d], bounds_[d], counts_[d]))
            throw DomainError("coordinate " + std::to_string(d) + " = " + std::to_string(x[d]) +
                              " is outside the search space");
}

Point SearchSpace::sample_uniform(std::mt19937_64& rng) const {
    Point x(dims());
    for (std::size_t d = 0; d < dims(); ++d) {
        if (counts_[d] > 0) {
            std::uniform_int_distribution<std::size_t> dist(0, counts_[d] - 1);
            x[d] = static_cast<double>(dist(rng));
        } else {
            std::uniform_real_distribution<double> dist(bounds_[d].lower, bounds_[d].upper);
            x[d] = dist(rng);
        }
    }
    return x;
}

double SearchSpace::normalize(std::size_t dim, double value) const {
    if (counts_.at(dim) > 0) return value;
    const auto& b = bounds_[dim];
    return (value - b.lower) / (b.upper - b.lower);
}

std::size_t SearchSpace::one_hot_width() const {
    std::size_t w = 0;
    for (auto c : counts_) w += c > 0 ? c : 1;
    return w;
}

void SearchSpace::encode_one_hot(std::span<const double> x, std::span<double> out) const {
    std::size_t k = 0;
    for (std::size_t d = 0; d < dims(); ++d) {
        if (counts_[d] > 0) {
            const auto code = static_cast<std::size_t>(x[d]);
            for (std::size_t c = 0; c < counts_[d]; ++c) out[k++] = c == code ? 1.0 : 0.0;
        } else {
            out[k++] = normalize(d, x[d]);
        }
    }
}

bool operator==(const SearchSpace& a, const SearchSpace& b) {
    if (a.bounds_.size() != b.bounds_.size() || a.counts_ != b.counts_) return false;
    for (std::size_t d = 0; d < a.bounds_.size(); ++d)
        if (a.bounds_[d].lower != b.bounds_[d].lower || a.bounds_[d].upper != b.bounds_[d].upper) return false;
    return true;
}

}  // namespace lfbo
