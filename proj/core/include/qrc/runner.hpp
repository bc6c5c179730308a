#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qrc/config.hpp"
#include "qrc/quantum.hpp"
#include "qrc/reservoir.hpp"

namespace qrc {

std::string_view library_version() noexcept;

struct ForecastTrace {
    std::size_t realization = 0;
    std::vector<double> truth;
    std::vector<double> prediction;
    double sigma = 0.0;
};

struct RunResult {
    nlohmann::json config;   // snapshot of the point configuration
    std::string axis = "none";
    double value = 0.0;      // sweep coordinate (index for observable sets)
    std::string label;       // printable sweep coordinate
    std::string metric;      // "capacity" or "vpt"
    std::vector<double> per_realization;
    double mean = 0.0;
    double sem = 0.0;        // sample std / sqrt(n)
    double wall_seconds = 0.0;
    std::string version;
    std::optional<std::string> error; // set when a realization failed
    std::optional<ForecastTrace> trace; // mg: best realization of this point
};

// Mean and standard deviation of the mean (sample std / sqrt(n); 0 for n = 1).
std::pair<double, double> mean_and_sem(const std::vector<double> &values);

// The pieces a single realization runs on; exposed so tests and tools can
// drive the pipeline by hand.
struct Realization {
    std::uint64_t coupling_seed = 0;
    std::uint64_t task_seed = 0;
};
Realization realization_seeds(std::uint64_t master, std::size_t index);

// Hamiltonian builder for the point's backend (first grid elements).
QuantumReservoir::HamiltonianBuilder hamiltonian_builder(const ExperimentConfig &point, std::uint64_t coupling_seed);
StateVector initial_state(const ExperimentConfig &point);
QuantumReservoir make_backend(const ExperimentConfig &point, std::uint64_t coupling_seed, InputEncoding encoding);
ReservoirConfig reservoir_config(const ExperimentConfig &point);

// Input encoding for a training window: Rydberg maps onto [0, 1], Ising uses
// cfg.input_range when set and the raw inputs otherwise.
InputEncoding encoding_for(const ExperimentConfig &point, std::span<const double> training_inputs);

// Runs the base point (first element of every grid). Throws on failure, with
// the realization index in the message.
RunResult run_experiment(const ExperimentConfig &cfg);

// One RunResult per grid point of `axis`. Realization r uses the same
// couplings and task series at every point. Failed points carry `error`.
std::vector<RunResult> sweep(const ExperimentConfig &cfg, SweepAxis axis);

struct EmittedFiles {
    std::filesystem::path result;
    std::filesystem::path table;
    std::vector<std::filesystem::path> traces;
};

// Writes <dir>/<stem>.json (config + per-realization + aggregates),
// <dir>/<stem>.csv (sweep_value, metric_mean, metric_sem, n_realizations) and,
// for forecasts, <dir>/<stem>_trace<i>.csv (step, truth, prediction).
// <stem> = <task>_<backend>_seed<seed>[_<axis>].
EmittedFiles emit_outputs(const std::vector<RunResult> &results, const std::filesystem::path &dir);

std::vector<RunResult> load_results(const std::filesystem::path &result_file);

std::string csv_field(const std::string &s);

} // namespace qrc
