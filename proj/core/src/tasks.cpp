#include "qrc/tasks.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "qrc/error.hpp"
#include "qrc/random.hpp"

namespace qrc {

TaskSeries gen_stm(std::uint64_t seed, std::size_t length, std::size_t tau) {
    if (length <= tau) {
        throw Error(ErrorKind::LengthTooShort,
                    "STM length " + std::to_string(length) + " must exceed the delay " + std::to_string(tau));
    }
    TaskSeries ts;
    ts.task = "stm";
    ts.seed = seed;
    ts.params["tau"] = static_cast<double>(tau);
    Rng rng(seed);
    ts.inputs.resize(length);
    for (auto &s : ts.inputs) {
        s = rng.uniform(-1.0, 1.0);
    }
    ts.targets = delayed(ts.inputs, tau);
    ts.first_valid = tau;
    return ts;
}

std::vector<double> delayed(std::span<const double> s, std::size_t tau) {
    std::vector<double> y(s.size(), 0.0);
    for (std::size_t k = tau; k < s.size(); ++k) {
        y[k] = s[k - tau];
    }
    return y;
}

std::vector<double> narma(std::span<const double> s, int n) {
    if (n < 1) {
        throw Error(ErrorKind::ParameterInvalid, "NARMA order must be >= 1");
    }
    const auto order = static_cast<std::size_t>(n);
    if (s.size() <= order) {
        throw Error(ErrorKind::LengthTooShort, "NARMA input must be longer than the order");
    }
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (!(s[k] >= 0.0 && s[k] <= 0.1)) {
            throw Error(ErrorKind::InputOutOfRange,
                        "NARMA input s[" + std::to_string(k) + "] = " + std::to_string(s[k]) + " not in [0, 0.1]");
        }
    }
    std::vector<double> y(s.size(), 0.0);
    for (std::size_t k = order; k < s.size(); ++k) {
        double window = 0.0;
        for (std::size_t i = 0; i < order; ++i) {
            window += y[k - i - 1];
        }
        y[k] = 0.3 * y[k - 1] + 0.05 * y[k - 1] * window + 1.5 * s[k - order] * s[k - 1] + 0.01;
        if (!(std::abs(y[k]) <= 1.0)) {
            throw Error(ErrorKind::Divergence, "NARMA target left [-1, 1] at step " + std::to_string(k));
        }
    }
    return y;
}

TaskSeries gen_narma(std::uint64_t seed, std::size_t length, int n) {
    TaskSeries ts;
    ts.task = "narma";
    ts.seed = seed;
    ts.params["n"] = n;
    Rng rng(seed);
    ts.inputs.resize(length);
    for (auto &s : ts.inputs) {
        s = rng.uniform(0.0, 0.1);
    }
    ts.targets = narma(ts.inputs, n);
    ts.first_valid = static_cast<std::size_t>(n);
    return ts;
}

namespace {

// Number of whole steps in `span`, or -1 when span is not a multiple of step.
long long whole_steps(double span, double step) {
    const double q = span / step;
    const double r = std::round(q);
    if (std::abs(q - r) > 1e-9 * std::max(1.0, q)) {
        return -1;
    }
    return static_cast<long long>(r);
}

} // namespace

void MGParams::validate() const {
    if (!(tau > 0.0) || !(n >= 1.0) || !(sample_dt > 0.0) || !(step > 0.0) || !(discard >= 0.0)) {
        throw Error(ErrorKind::ParameterInvalid, "Mackey-Glass parameters out of range");
    }
    if (!std::isfinite(beta) || !std::isfinite(gamma) || !std::isfinite(history)) {
        throw Error(ErrorKind::ParameterInvalid, "Mackey-Glass parameters must be finite");
    }
    if (whole_steps(tau, step) < 1 || whole_steps(sample_dt, step) < 1 || whole_steps(discard, step) < 0) {
        throw Error(ErrorKind::ParameterInvalid, "integrator step must divide tau, sample_dt and discard");
    }
}

std::vector<double> mackey_glass(const MGParams &p, std::size_t n_samples) {
    p.validate();
    if (n_samples < 1) {
        throw Error(ErrorKind::ParameterInvalid, "n_samples must be >= 1");
    }
    const long long delay = whole_steps(p.tau, p.step);
    const long long stride = whole_steps(p.sample_dt, p.step);
    const long long skip = whole_steps(p.discard, p.step);
    const long long total = skip + stride * static_cast<long long>(n_samples - 1);
    const double h = p.step;

    auto rhs = [&p](double s, double s_delayed) {
        return p.beta * s_delayed / (1.0 + std::pow(s_delayed, p.n)) - p.gamma * s;
    };

    // Grid values and derivatives for t_i = i h, i = 0..total.
    std::vector<double> s(static_cast<std::size_t>(total + 1));
    std::vector<double> f(static_cast<std::size_t>(total + 1));
    auto value_at = [&](long long i) { return i < 0 ? p.history : s[static_cast<std::size_t>(i)]; };
    auto slope_at = [&](long long i) { return i < 0 ? 0.0 : f[static_cast<std::size_t>(i)]; };

    s[0] = p.history;
    f[0] = rhs(s[0], value_at(-delay));
    for (long long i = 0; i < total; ++i) {
        const long long d0 = i - delay;
        const double lag0 = value_at(d0);
        const double lag1 = value_at(d0 + 1);
        // Cubic Hermite midpoint of the delayed segment keeps RK4 at fourth order.
        // Segments inside the history stay constant; s' jumps at t = 0, so f[0]
        // must not leak into the segment that ends there.
        const double lag_mid =
            d0 + 1 <= 0 ? p.history : 0.5 * (lag0 + lag1) + h * (slope_at(d0) - slope_at(d0 + 1)) / 8.0;

        const double y = s[static_cast<std::size_t>(i)];
        const double k1 = rhs(y, lag0);
        const double k2 = rhs(y + 0.5 * h * k1, lag_mid);
        const double k3 = rhs(y + 0.5 * h * k2, lag_mid);
        const double k4 = rhs(y + h * k3, lag1);
        const double next = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        s[static_cast<std::size_t>(i + 1)] = next;
        f[static_cast<std::size_t>(i + 1)] = rhs(next, value_at(i + 1 - delay));
    }

    std::vector<double> out(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) {
        out[k] = s[static_cast<std::size_t>(skip + stride * static_cast<long long>(k))];
    }
    return out;
}

void write_task_csv(const std::filesystem::path &path, const TaskSeries &series) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    }
    out.precision(17);
    out << "index,input,target\n";
    for (std::size_t k = 0; k < series.inputs.size(); ++k) {
        out << k << ',' << series.inputs[k] << ',' << series.targets[k] << '\n';
    }
    if (!out) {
        throw Error(ErrorKind::Io, "write failed for " + path.string());
    }
}

} // namespace qrc
