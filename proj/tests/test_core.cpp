#include <doctest.h>

#include <random>

#include "lfbo/core/dataset.hpp"
#include "lfbo/core/errors.hpp"
#include "lfbo/core/utility.hpp"

using namespace lfbo;

TEST_CASE("search space validates construction and points") {
    CHECK_THROWS_AS(SearchSpace::box({{1.0, 0.0}}), InvalidArgument);
    CHECK_THROWS_AS(SearchSpace::box({}), InvalidArgument);
    CHECK_THROWS_AS(SearchSpace::categorical({1}), InvalidArgument);

    const SearchSpace s({{-1.0, 1.0}, {0.0, 0.0}}, {{1, 3}});
    CHECK(s.dims() == 2);
    CHECK(s.is_categorical(1));
    CHECK(s.category_count(1) == 3);
    CHECK(s.contains(Point{0.5, 2.0}));
    CHECK_FALSE(s.contains(Point{0.5, 3.0}));
    CHECK_FALSE(s.contains(Point{0.5, 1.5}));
    CHECK_FALSE(s.contains(Point{1.5, 0.0}));
    CHECK_FALSE(s.contains(Point{0.0}));
    CHECK_THROWS_AS(s.validate(Point{std::nan(""), 0.0}), DomainError);
    CHECK_NOTHROW(s.validate(Point{-1.0, 0.0}));
}

TEST_CASE("uniform samples stay inside the space") {
    const SearchSpace s({{-2.0, 5.0}, {0.0, 0.0}, {0.1, 0.2}}, {{1, 4}});
    std::mt19937_64 rng(7);
    std::vector<int> seen(4, 0);
    for (int i = 0; i < 2000; ++i) {
        const auto x = s.sample_uniform(rng);
        REQUIRE(s.contains(x));
        ++seen[static_cast<std::size_t>(x[1])];
    }
    for (int c : seen) CHECK(c > 350);
}

TEST_CASE("one-hot encoding scales continuous dims and expands categoricals") {
    const SearchSpace s({{0.0, 0.0}, {10.0, 20.0}}, {{0, 3}});
    REQUIRE(s.one_hot_width() == 4);
    std::vector<double> out(4);
    s.encode_one_hot(Point{2.0, 15.0}, out);
    CHECK(out == std::vector<double>{0.0, 0.0, 1.0, 0.5});
    CHECK(s.normalize(1, 20.0) == doctest::Approx(1.0));
}

TEST_CASE("dataset rejects invalid observations") {
    Dataset ds(SearchSpace::box({{0.0, 1.0}}));
    ds.add({0.5}, 1.0);
    CHECK_THROWS_AS(ds.add({1.5}, 1.0), DomainError);
    CHECK_THROWS_AS(ds.add({0.5}, std::numeric_limits<double>::infinity()), InvalidArgument);
    CHECK(ds.size() == 1);
    CHECK(ds.outcomes() == std::vector<double>{1.0});
}

TEST_CASE("utility values") {
    CHECK(eval_utility(Utility::ei(), 0.7, 0.2) == doctest::Approx(0.5));
    CHECK(eval_utility(Utility::pi(), 0.2, 0.2) == 0.0);
    CHECK(eval_utility(Utility::pi(), 0.21, 0.2) == 1.0);
    CHECK(eval_utility(Utility::power(2.0), 1.5, 0.5) == doctest::Approx(1.0));
    CHECK(eval_utility(Utility::power(0.0), 0.5, 0.5) == 0.0);
    CHECK(eval_utility(Utility::power(0.0), 0.6, 0.5) == 1.0);
    CHECK_THROWS_AS(Utility::power(-1.0), InvalidArgument);
    CHECK_THROWS_AS(eval_utility(Utility::ei(), std::nan(""), 0.0), InvalidArgument);
}

TEST_CASE("utility properties on random pairs") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    for (int i = 0; i < 10000; ++i) {
        const double y = d(rng), tau = d(rng);
        for (const auto& u : {Utility::pi(), Utility::ei(), Utility::power(0.5), Utility::power(2.5)}) {
            const double v = eval_utility(u, y, tau);
            REQUIRE(v >= 0.0);
            if (y <= tau) REQUIRE(v == 0.0);
        }
        REQUIRE(eval_utility(Utility::ei(), y, tau) == eval_utility(Utility::power(1.0), y, tau));
    }
}

TEST_CASE("threshold is the linear-interpolation quantile") {
    const std::vector<double> ten{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    CHECK(select_threshold(ten, {0.33}) == doctest::Approx(7.03).epsilon(1e-12));
    CHECK(select_threshold(ten, {1.0 - 1e-12}) == doctest::Approx(1.0));
    CHECK(select_threshold(std::vector<double>{5, 5, 5}, {0.2}) == 5.0);
    CHECK(select_threshold(std::vector<double>{5, 5, 5}, {0.9}) == 5.0);
    CHECK_THROWS_AS(select_threshold(std::vector<double>{}, {0.3}), EmptyDatasetError);
    CHECK_THROWS_AS(select_threshold(ten, {0.0}), InvalidArgument);
    CHECK_THROWS_AS(select_threshold(ten, {1.0}), InvalidArgument);
    CHECK_THROWS_AS(select_threshold(Dataset(SearchSpace::box({{0.0, 1.0}})), {0.3}), EmptyDatasetError);
}

TEST_CASE("threshold decreases as gamma grows") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> y(1 + rep);
        for (auto& v : y) v = n(rng);
        double prev = select_threshold(y, {0.01});
        for (double g = 0.05; g < 1.0; g += 0.05) {
            const double t = select_threshold(y, {g});
            REQUIRE(t <= prev);
            prev = t;
        }
    }
}

TEST_CASE("weights") {
    const std::vector<double> y{0.1, 0.6, 0.9};
    const auto ei = build_weights(y, Utility::ei(), 0.5, true);
    CHECK(ei[0] == 0.0);
    CHECK(ei[1] == doctest::Approx(0.4));
    CHECK(ei[2] == doctest::Approx(1.6));
    CHECK(build_weights(y, Utility::pi(), 0.5, true) == std::vector<double>{0.0, 1.0, 1.0});
    CHECK(build_weights(y, Utility::ei(), 0.9, true) == std::vector<double>{0.0, 0.0, 0.0});
    const auto raw = build_weights(y, Utility::ei(), 0.5, false);
    CHECK(raw[2] == doctest::Approx(0.4));
}

TEST_CASE("normalized positive weights have mean one") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n;
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> y(2 + rep % 40);
        for (auto& v : y) v = n(rng);
        const double tau = select_threshold(y, {0.3});
        for (const auto& u : {Utility::ei(), Utility::power(2.0), Utility::pi()}) {
            const auto w = build_weights(y, u, tau, true);
            double sum = 0.0;
            int pos = 0;
            for (double v : w)
                if (v > 0) sum += v, ++pos;
            if (pos > 0) REQUIRE(sum / pos == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("scaling outcomes scales EI weights and leaves PI weights") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> n;
    for (double c : {0.5, 2.0, 17.0}) {
        std::vector<double> y(30), ys(30);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = n(rng), ys[i] = c * y[i];
        const double t = select_threshold(y, {0.3}), ts = select_threshold(ys, {0.3});
        const auto w = build_weights(y, Utility::ei(), t, false);
        const auto wsc = build_weights(ys, Utility::ei(), ts, false);
        for (std::size_t i = 0; i < y.size(); ++i) CHECK(wsc[i] == doctest::Approx(c * w[i]).epsilon(1e-12));
        CHECK(build_weights(y, Utility::pi(), t, false) == build_weights(ys, Utility::pi(), ts, false));
    }
}
