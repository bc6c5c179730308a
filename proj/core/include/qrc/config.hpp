#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qrc/quantum.hpp"
#include "qrc/tasks.hpp"

namespace qrc {

enum class TaskKind { Stm, Narma, Mg };
enum class BackendKind { Ising, Rydberg };
enum class SweepAxis { None, Dt, LR, NS, Tau, NarmaOrder, ObservableSet, PhiStar, DeltaStar };

std::string_view to_string(TaskKind t) noexcept;
std::string_view to_string(BackendKind b) noexcept;
std::string_view to_string(SweepAxis a) noexcept;
TaskKind parse_task(std::string_view s);
BackendKind parse_backend(std::string_view s);
SweepAxis parse_axis(std::string_view s);

struct IsingSettings {
    int n_spins = 5;
    double j = 1.0;
    double h = 0.2;
    double c_s = 0.2;

    bool operator==(const IsingSettings &) const = default;
};

struct RydbergSettings {
    int n_atoms = 5;
    double spacing = 7.0;
    double c6 = 862690.0 * RydbergParams::kTwoPi;
    double omega = RydbergParams::kTwoPi * 4.2;
    Encoding encoding = Encoding::Detuning;
    std::vector<double> phi_star = {std::numbers::pi / 2};
    std::vector<double> delta_star = {5.0};
    double delta_scale = 5.0;
    double phi_scale = std::numbers::pi;

    bool operator==(const RydbergSettings &) const = default;
};

struct MgSettings {
    MGParams params;
    std::size_t max_offset = 2000; // realization start offset drawn from [0, max_offset] samples

    bool operator==(const MgSettings &) const = default;
};

// Declarative description of an experiment. Every grid's first element is the
// base point; a sweep varies one axis over its grid and holds the others at
// their base values.
struct ExperimentConfig {
    TaskKind task = TaskKind::Stm;
    BackendKind backend = BackendKind::Ising;
    IsingSettings ising;
    RydbergSettings rydberg;
    MgSettings mg;

    std::vector<std::string> observables = {"A"};
    std::vector<double> dt = {0.01};
    std::vector<int> l_r = {45};
    std::vector<int> n_s = {1};
    double gamma = 0.95;
    double ridge = 0.0;
    bool intercept = true;

    std::size_t n_train = 1000;
    std::size_t washout = 500;
    std::size_t test_length = 1000;
    std::size_t horizon = 800;

    std::vector<int> tau = {1};
    std::vector<int> narma_order = {10};
    double vpt_epsilon = 0.3;

    // Ising only: min-max map of the training-window inputs onto this range.
    // Rydberg inputs are always mapped onto [0, 1].
    std::optional<std::array<double, 2>> input_range;
    // "auto" (Ising: all spins up |0...0>, Rydberg: all atoms in the ground
    // state), "up", "down", or an explicit bitstring such as "01001".
    std::string initial_state = "auto";

    std::size_t n_realizations = 30;
    std::uint64_t seed = 1234;
    std::string out = "results";
    std::size_t threads = 0; // 0: hardware concurrency
    SweepAxis axis = SweepAxis::None;

    bool operator==(const ExperimentConfig &) const = default;

    // Throws Error(Config) describing the first violated constraint.
    void validate() const;

    // Number of points along `a` (1 for None).
    std::size_t grid_size(SweepAxis a) const;

    // Copy with every grid collapsed to its i-th element along `a` (and the
    // first element elsewhere).
    ExperimentConfig point(SweepAxis a, std::size_t i) const;

    int spins() const noexcept { return backend == BackendKind::Ising ? ising.n_spins : rydberg.n_atoms; }
};

// Defaults tuned per task (gamma 0.6 and JΔt = 10 for Mackey-Glass, ...).
ExperimentConfig default_config(TaskKind task);

nlohmann::json to_json(const ExperimentConfig &cfg);

// Strict: unknown keys and type mismatches raise Error(Config). Missing keys
// take the task defaults.
ExperimentConfig config_from_json(const nlohmann::json &j);

ExperimentConfig load_config(const std::filesystem::path &path);

} // namespace qrc
