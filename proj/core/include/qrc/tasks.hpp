#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace qrc {

// Paired input/target sequences. Targets before `first_valid` are
// placeholders (zero) and must not be fitted or scored.
struct TaskSeries {
    std::string task;
    std::uint64_t seed = 0;
    std::map<std::string, double> params;
    std::vector<double> inputs;
    std::vector<double> targets;
    std::size_t first_valid = 0;
};

// Short-term memory: s_k ~ U[-1, 1], y_k = s_{k - tau}.
TaskSeries gen_stm(std::uint64_t seed, std::size_t length, std::size_t tau);

// Delayed copy of an existing input series (shares the STM target rule).
std::vector<double> delayed(std::span<const double> s, std::size_t tau);

// NARMA-n targets for inputs in [0, 0.1], with y_i = 0 for i < n.
std::vector<double> narma(std::span<const double> s, int n);

// Inputs s_k ~ U[0, 0.1] and the matching NARMA-n targets.
TaskSeries gen_narma(std::uint64_t seed, std::size_t length, int n);

struct MGParams {
    double beta = 0.2;
    double gamma = 0.1;
    double tau = 17.0;
    double n = 10.0;
    double sample_dt = 3.0;
    double history = 1.2; // constant s(t) for t <= 0
    double step = 0.1;    // internal RK4 step
    double discard = 1000.0;

    void validate() const;
    bool operator==(const MGParams &) const = default;
};

// ds/dt = beta s(t - tau) / (1 + s(t - tau)^n) - gamma s(t), integrated with
// fixed-step RK4 on a grid that contains t - tau exactly. Returns n_samples
// values spaced sample_dt apart, starting after the discarded transient.
std::vector<double> mackey_glass(const MGParams &params, std::size_t n_samples);

// CSV with columns index,input,target.
void write_task_csv(const std::filesystem::path &path, const TaskSeries &series);

} // namespace qrc
