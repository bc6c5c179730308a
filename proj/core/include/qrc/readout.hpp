#pragma once

#include <cstddef>
#include <vector>

#include "qrc/linalg.hpp"
#include "qrc/reservoir.hpp"

namespace qrc {

struct ReadoutModel {
    RealVector w;
    double bias = 0.0; // only nonzero when trained with an intercept column
    double ridge = 0.0;
    std::size_t train_rows = 0;
    bool intercept = false;
};

// Linear fit of y on the reservoir rows. Underdetermined systems are solved in
// the minimum-norm sense with a warning on stderr.
ReadoutModel train(const RealMatrix &r, const RealVector &y, double ridge = 0.0, bool intercept = false);

// One factorization, several targets (one per column of y).
std::vector<ReadoutModel> train_many(const RealMatrix &r, const RealMatrix &y, double ridge = 0.0,
                                     bool intercept = false);

double predict_step(const ReadoutModel &model, const RealVector &r_k);

RealVector predict(const ReadoutModel &model, const RealMatrix &rows);

// Closed-loop forecast. Starting from `state` (the reservoir after the last
// training input), feed `seed_input`, predict the next value, and feed each
// prediction back as the following input. Returns `horizon` predictions.
std::vector<double> forecast(const ReadoutModel &model, const FeatureMap &features, const ReservoirConfig &cfg,
                             ReservoirState state, double seed_input, std::size_t horizon);

std::vector<double> forecast(const ReadoutModel &model, const QuantumReservoir &backend,
                             const ReservoirConfig &cfg, ReservoirState state, double seed_input,
                             std::size_t horizon);

} // namespace qrc
