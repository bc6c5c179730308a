#include "qrc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qrc/error.hpp"

namespace qrc {

namespace {

double mean_of(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v;
    return acc / static_cast<double>(x.size());
}

bool is_constant(std::span<const double> x) {
    return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

} // namespace

double capacity(std::span<const double> y, std::span<const double> y_hat) {
    if (y.size() != y_hat.size() || y.size() < 2) {
        throw Error(ErrorKind::DimensionMismatch, "capacity needs two equal-length series of length >= 2");
    }
    if (is_constant(y) || is_constant(y_hat)) {
        throw Error(ErrorKind::DegenerateVariance, "capacity of a constant series is undefined");
    }
    const double my = mean_of(y);
    const double mh = mean_of(y_hat);
    double cov = 0.0, vy = 0.0, vh = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        const double dy = y[k] - my;
        const double dh = y_hat[k] - mh;
        cov += dy * dh;
        vy += dy * dy;
        vh += dh * dh;
    }
    if (!(vy > 0.0) || !(vh > 0.0)) {
        throw Error(ErrorKind::DegenerateVariance, "series variance vanished");
    }
    // Normalizations cancel; the product is ordered so the result is symmetric.
    return std::clamp(cov * cov / (vy * vh), 0.0, 1.0);
}

std::size_t vpt(std::span<const double> y, std::span<const double> y_tilde, double sigma, double epsilon) {
    if (y.size() != y_tilde.size()) {
        throw Error(ErrorKind::DimensionMismatch, "vpt needs equal-length series");
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw Error(ErrorKind::DegenerateSigma, "sigma must be positive, got " + std::to_string(sigma));
    }
    if (!(epsilon > 0.0)) {
        throw Error(ErrorKind::ParameterInvalid, "epsilon must be positive");
    }
    std::size_t t = 0;
    while (t < y.size()) {
        const double z = (y_tilde[t] - y[t]) / sigma;
        if (!(z * z < epsilon)) {
            break;
        }
        ++t;
    }
    return t;
}

double population_std(std::span<const double> x) {
    if (x.empty()) {
        throw Error(ErrorKind::EmptyVector, "std of an empty series");
    }
    const double m = mean_of(x);
    double acc = 0.0;
    for (double v : x) acc += (v - m) * (v - m);
    return std::sqrt(acc / static_cast<double>(x.size()));
}

} // namespace qrc
