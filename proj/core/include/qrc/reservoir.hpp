#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "qrc/linalg.hpp"
#include "qrc/quantum.hpp"

namespace qrc {

// Hyperparameters of the classical memory recurrence
//   r_k = gamma * S^{n_s} r_{k-1} + B^{l_r} m_k.
struct ReservoirConfig {
    double gamma = 0.95;
    int n_s = 1;
    int l_r = 45;
    int m_len = 45;

    // Throws ParameterInvalid / NotMultiple.
    void validate() const;
};

struct ReservoirState {
    RealVector r;
    std::size_t step = 0;

    static ReservoirState zero(int l_r);
};

// out[i] = v[(i + n_s) mod len]. n_s may be negative.
RealVector shift(const RealVector &v, int n_s);

// Zero-interleaving embedding: with stride q = l_r / len(m), out[q i] = m[i].
RealVector lengthen(const RealVector &m, int l_r);

ReservoirState update(const ReservoirState &state, const RealVector &m_k, const ReservoirConfig &cfg);

using FeatureMap = std::function<RealVector(double)>;

struct ReservoirRun {
    RealMatrix rows;           // kept steps x l_r, in step order
    ReservoirState final_state; // state after the last input
};

// Drives the recurrence from r_0 = 0 over every input and keeps the rows
// after the first `washout` steps. Throws InsufficientLength when
// inputs.size() <= washout.
ReservoirRun run(std::span<const double> inputs, const FeatureMap &features, const ReservoirConfig &cfg,
                 std::size_t washout);

ReservoirRun run(std::span<const double> inputs, const QuantumReservoir &backend, const ReservoirConfig &cfg,
                 std::size_t washout);

} // namespace qrc
