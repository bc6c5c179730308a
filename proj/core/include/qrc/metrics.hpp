#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace qrc {

struct MetricReport {
    std::string name; // "capacity" or "vpt"
    double value = 0.0;
    double param = 0.0; // tau / NARMA order for capacity, epsilon for vpt
    double sigma = 0.0; // vpt only
    std::size_t n_points = 0;
};

// Squared Pearson correlation cov^2 / (var(y) var(y_hat)), in [0, 1].
// Throws DimensionMismatch, DegenerateVariance.
double capacity(std::span<const double> y, std::span<const double> y_hat);

// Number of leading steps with ((y_tilde - y) / sigma)^2 < epsilon.
// Throws DimensionMismatch, DegenerateSigma.
std::size_t vpt(std::span<const double> y, std::span<const double> y_tilde, double sigma, double epsilon = 0.3);

// 1/N normalization.
double population_std(std::span<const double> x);

} // namespace qrc
