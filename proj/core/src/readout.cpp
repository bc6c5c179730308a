#include "qrc/readout.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "qrc/error.hpp"

namespace qrc {

std::vector<ReadoutModel> train_many(const RealMatrix &r, const RealMatrix &y, double ridge, bool intercept) {
    if (r.rows() < r.cols()) {
        std::clog << "qrc: readout has " << r.rows() << " rows for " << r.cols()
                  << " columns; using the minimum-norm solution\n";
    }
    // The intercept is fitted unpenalized by centering rows and targets.
    RealMatrix w;
    RealVector r_mean = RealVector::Zero(r.cols());
    RealVector y_mean = RealVector::Zero(y.cols());
    if (intercept) {
        r_mean = r.colwise().mean().transpose();
        y_mean = y.colwise().mean().transpose();
        const RealMatrix rc = r.rowwise() - r_mean.transpose();
        const RealMatrix yc = y.rowwise() - y_mean.transpose();
        w = solve_readout(rc, yc, ridge);
    } else {
        w = solve_readout(r, y, ridge);
    }
    std::vector<ReadoutModel> models;
    models.reserve(static_cast<std::size_t>(y.cols()));
    for (Eigen::Index c = 0; c < y.cols(); ++c) {
        ReadoutModel m;
        m.w = w.col(c);
        m.bias = intercept ? y_mean[c] - m.w.dot(r_mean) : 0.0;
        m.ridge = ridge;
        m.train_rows = static_cast<std::size_t>(r.rows());
        m.intercept = intercept;
        models.push_back(std::move(m));
    }
    return models;
}

ReadoutModel train(const RealMatrix &r, const RealVector &y, double ridge, bool intercept) {
    return std::move(train_many(r, RealMatrix(y), ridge, intercept).front());
}

double predict_step(const ReadoutModel &model, const RealVector &r_k) {
    if (r_k.size() != model.w.size()) {
        throw Error(ErrorKind::DimensionMismatch, "reservoir state has length " + std::to_string(r_k.size()) +
                                                      ", model expects " + std::to_string(model.w.size()));
    }
    return model.w.dot(r_k) + model.bias;
}

RealVector predict(const ReadoutModel &model, const RealMatrix &rows) {
    if (rows.cols() != model.w.size()) {
        throw Error(ErrorKind::DimensionMismatch, "row width does not match the model");
    }
    RealVector out = rows * model.w;
    out.array() += model.bias;
    return out;
}

std::vector<double> forecast(const ReadoutModel &model, const FeatureMap &features, const ReservoirConfig &cfg,
                             ReservoirState state, double seed_input, std::size_t horizon) {
    if (horizon < 1) {
        throw Error(ErrorKind::ParameterInvalid, "forecast horizon must be >= 1");
    }
    std::vector<double> out;
    out.reserve(horizon);
    double input = seed_input;
    for (std::size_t step = 0; step < horizon; ++step) {
        state = update(state, features(input), cfg);
        const double next = predict_step(model, state.r);
        if (!std::isfinite(next)) {
            throw Error(ErrorKind::NonFinite, "forecast diverged at step " + std::to_string(step) +
                                                  " (last input " + std::to_string(input) + ")");
        }
        out.push_back(next);
        input = next;
    }
    return out;
}

std::vector<double> forecast(const ReadoutModel &model, const QuantumReservoir &backend,
                             const ReservoirConfig &cfg, ReservoirState state, double seed_input,
                             std::size_t horizon) {
    return forecast(model, FeatureMap([&backend](double s) { return backend.features(s); }), cfg,
                    std::move(state), seed_input, horizon);
}

} // namespace qrc
