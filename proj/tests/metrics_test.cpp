#include "qrc/metrics.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qrc/error.hpp"

using namespace qrc;

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<double> v(n);
    for (auto &x : v) x = g(rng);
    return v;
}

} // namespace

TEST(Capacity, identical_series) {
    const auto y = noise(200, 1);
    EXPECT_NEAR(capacity(y, y), 1.0, 1e-15);
}

TEST(Capacity, affine_invariance) {
    const auto y = noise(500, 2);
    auto y_hat = noise(500, 3);
    for (std::size_t k = 0; k < y.size(); ++k) y_hat[k] += y[k];
    const double base = capacity(y, y_hat);
    std::vector<double> mapped(y_hat.size());
    for (std::size_t k = 0; k < y.size(); ++k) mapped[k] = -2.0 * y_hat[k] + 7.0;
    EXPECT_NEAR(capacity(y, mapped), base, 1e-12);
    std::vector<double> self(y.size());
    for (std::size_t k = 0; k < y.size(); ++k) self[k] = -2.0 * y[k] + 7.0;
    EXPECT_NEAR(capacity(y, self), 1.0, 1e-12);
}

TEST(Capacity, symmetric) {
    const auto a = noise(300, 4);
    const auto b = noise(300, 5);
    EXPECT_DOUBLE_EQ(capacity(a, b), capacity(b, a));
}

TEST(Capacity, four_point_example) {
    const std::vector<double> y = {1, 2, 3, 4};
    const std::vector<double> y_hat = {1, 2, 3, 5};
    // cross sum = 6.5, var(y) = 5, var(y_hat) = 8.75 (sums of squared deviations).
    EXPECT_NEAR(capacity(y, y_hat), 6.5 * 6.5 / (5.0 * 8.75), 1e-15);
    EXPECT_NEAR(capacity(y, y_hat), 0.9657142857142857, 1e-15);
    EXPECT_NEAR(capacity(y, y_hat), oracle::pearson_squared(y, y_hat), 1e-14);
}

TEST(Capacity, matches_textbook_formula) {
    const auto a = noise(1000, 6);
    auto b = noise(1000, 7);
    for (std::size_t k = 0; k < a.size(); ++k) b[k] += 0.5 * a[k];
    EXPECT_NEAR(capacity(a, b), oracle::pearson_squared(a, b), 1e-12);
}

TEST(Capacity, bounded) {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const double c = capacity(noise(50, s), noise(50, s + 100));
        EXPECT_GE(c, 0.0);
        EXPECT_LE(c, 1.0);
    }
}

TEST(Capacity, errors) {
    const std::vector<double> y = {1, 2, 3};
    const std::vector<double> flat = {2, 2, 2};
    try {
        capacity(y, flat);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateVariance);
    }
    try {
        capacity(y, std::vector<double>{1, 2});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
    }
}

TEST(Vpt, perfect_forecast_is_full_length) {
    const auto y = noise(64, 8);
    EXPECT_EQ(vpt(y, y, 1.0), 64u);
}

TEST(Vpt, immediate_violation) {
    const std::vector<double> y = {0, 0, 0};
    const std::vector<double> f = {0.5, 0, 0};
    EXPECT_EQ(vpt(y, f, 0.5), 0u);
}

TEST(Vpt, threshold_example) {
    const std::vector<double> y = {0, 0, 0, 0, 0};
    const std::vector<double> f = {0.1, 0.5, 0.1, 0.6, 0.0};
    EXPECT_EQ(vpt(y, f, 1.0, 0.3), 3u);
}

TEST(Vpt, counts_leading_run_only) {
    const std::vector<double> y = {0, 0, 0, 0};
    const std::vector<double> f = {0.0, 2.0, 0.0, 0.0};
    EXPECT_EQ(vpt(y, f, 1.0), 1u);
}

TEST(Vpt, errors) {
    const std::vector<double> y = {0, 0};
    try {
        vpt(y, y, 0.0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateSigma);
    }
    EXPECT_THROW(vpt(y, std::vector<double>{0}, 1.0), Error);
}

TEST(PopulationStd, known_values) {
    const std::vector<double> x = {2, 4, 4, 4, 5, 5, 7, 9};
    EXPECT_DOUBLE_EQ(population_std(x), 2.0);
    EXPECT_THROW(population_std(std::vector<double>{}), Error);
}
