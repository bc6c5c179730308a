#include "qrc/reservoir.hpp"

#include <cmath>
#include <string>

#include "qrc/error.hpp"

namespace qrc {

void ReservoirConfig::validate() const {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw Error(ErrorKind::ParameterInvalid, "gamma must lie in [0, 1]");
    }
    if (m_len < 1 || l_r < 1) {
        throw Error(ErrorKind::ParameterInvalid, "reservoir and measurement lengths must be >= 1");
    }
    if (l_r < m_len || l_r % m_len != 0) {
        throw Error(ErrorKind::NotMultiple, "l_r = " + std::to_string(l_r) +
                                                " is not a multiple of the measurement length " +
                                                std::to_string(m_len));
    }
}

ReservoirState ReservoirState::zero(int l_r) { return {RealVector::Zero(l_r), 0}; }

RealVector shift(const RealVector &v, int n_s) {
    const Eigen::Index len = v.size();
    if (len == 0) {
        throw Error(ErrorKind::EmptyVector, "cannot shift an empty vector");
    }
    Eigen::Index offset = n_s % len;
    if (offset < 0) {
        offset += len;
    }
    RealVector out(len);
    out.head(len - offset) = v.tail(len - offset);
    out.tail(offset) = v.head(offset);
    return out;
}

RealVector lengthen(const RealVector &m, int l_r) {
    const Eigen::Index len = m.size();
    if (len == 0) {
        throw Error(ErrorKind::EmptyVector, "cannot lengthen an empty vector");
    }
    if (l_r < len || l_r % len != 0) {
        throw Error(ErrorKind::NotMultiple,
                    std::to_string(l_r) + " is not a multiple of " + std::to_string(len));
    }
    const Eigen::Index stride = l_r / len;
    RealVector out = RealVector::Zero(l_r);
    for (Eigen::Index i = 0; i < len; ++i) {
        out[stride * i] = m[i];
    }
    return out;
}

ReservoirState update(const ReservoirState &state, const RealVector &m_k, const ReservoirConfig &cfg) {
    if (m_k.size() != cfg.m_len) {
        throw Error(ErrorKind::DimensionMismatch, "measurement has length " + std::to_string(m_k.size()) +
                                                      ", expected " + std::to_string(cfg.m_len));
    }
    if (state.r.size() != cfg.l_r) {
        throw Error(ErrorKind::DimensionMismatch, "reservoir has length " + std::to_string(state.r.size()) +
                                                      ", expected " + std::to_string(cfg.l_r));
    }
    ReservoirState next;
    next.r = cfg.gamma * shift(state.r, cfg.n_s) + lengthen(m_k, cfg.l_r);
    next.step = state.step + 1;
    return next;
}

ReservoirRun run(std::span<const double> inputs, const FeatureMap &features, const ReservoirConfig &cfg,
                 std::size_t washout) {
    cfg.validate();
    if (inputs.size() <= washout) {
        throw Error(ErrorKind::InsufficientLength, std::to_string(inputs.size()) +
                                                       " inputs do not exceed the washout of " +
                                                       std::to_string(washout));
    }
    ReservoirRun out;
    out.rows.resize(static_cast<Eigen::Index>(inputs.size() - washout), cfg.l_r);
    ReservoirState state = ReservoirState::zero(cfg.l_r);
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        state = update(state, features(inputs[k]), cfg);
        if (k >= washout) {
            out.rows.row(static_cast<Eigen::Index>(k - washout)) = state.r.transpose();
        }
    }
    out.final_state = std::move(state);
    return out;
}

ReservoirRun run(std::span<const double> inputs, const QuantumReservoir &backend, const ReservoirConfig &cfg,
                 std::size_t washout) {
    return run(inputs, FeatureMap([&backend](double s) { return backend.features(s); }), cfg, washout);
}

} // namespace qrc
