// Command-line front end: run the stm / narma / mg benchmarks, arbitrary
// sweeps from a config file, or validate a config.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qrc/config.hpp"
#include "qrc/error.hpp"
#include "qrc/runner.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kRuntimeError = 2, kIoError = 3 };

int exit_code_for(qrc::ErrorKind kind) {
    switch (kind) {
    case qrc::ErrorKind::Config: return kConfigError;
    case qrc::ErrorKind::Io: return kIoError;
    default: return kRuntimeError;
    }
}

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::size_t> realizations;
    std::optional<std::size_t> threads;
    std::optional<std::string> backend;
    std::optional<std::string> axis;
    std::vector<std::string> observables;
    std::vector<double> dt;
    std::vector<int> l_r;
    std::vector<int> n_s;
    std::vector<int> tau;
    std::vector<int> order;
    std::optional<double> gamma;
    std::optional<double> ridge;
    std::optional<std::size_t> n_train;
    bool quiet = false;
};

void add_common(CLI::App *cmd, Overrides &o) {
    cmd->add_option("-c,--config", o.config_path, "JSON config file; flags override its keys");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--realizations", o.realizations, "number of Hamiltonian realizations");
    cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
    cmd->add_option("--backend", o.backend, "ising or rydberg");
    cmd->add_option("--axis", o.axis, "sweep axis: dt, l_r, n_s, tau, n, observable_set, phi_star, delta_star");
    cmd->add_option("--observables", o.observables, "observable set(s): X1, One, N, XX, OneN, A");
    cmd->add_option("--dt", o.dt, "evolution time(s)");
    cmd->add_option("--l-r", o.l_r, "reservoir length(s)");
    cmd->add_option("--n-s", o.n_s, "shift count(s)");
    cmd->add_option("--tau", o.tau, "STM delay(s)");
    cmd->add_option("--order", o.order, "NARMA order(s)");
    cmd->add_option("--gamma", o.gamma, "memory weight in [0, 1]");
    cmd->add_option("--ridge", o.ridge, "ridge penalty (default 0)");
    cmd->add_option("--n-train", o.n_train, "training rows");
    cmd->add_flag("-q,--quiet", o.quiet, "do not print the result table");
}

// File first, then task defaults for missing keys, then command-line flags.
qrc::ExperimentConfig resolve(const Overrides &o, std::optional<qrc::TaskKind> task) {
    nlohmann::json j = nlohmann::json::object();
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw qrc::Error(qrc::ErrorKind::Io, "cannot open config " + o.config_path);
        try {
            j = nlohmann::json::parse(in, nullptr, true, true);
        } catch (const nlohmann::json::parse_error &e) {
            throw qrc::Error(qrc::ErrorKind::Config, o.config_path + ": " + e.what());
        }
    }
    if (task) j["task"] = std::string(qrc::to_string(*task));
    if (o.seed) j["seed"] = *o.seed;
    if (o.out) j["out"] = *o.out;
    if (o.realizations) j["n_realizations"] = *o.realizations;
    if (o.threads) j["threads"] = *o.threads;
    if (o.backend) j["backend"] = *o.backend;
    if (o.axis) j["axis"] = *o.axis;
    if (!o.observables.empty()) j["observables"] = o.observables;
    if (!o.dt.empty()) j["dt"] = o.dt;
    if (!o.l_r.empty()) j["l_r"] = o.l_r;
    if (!o.n_s.empty()) j["n_s"] = o.n_s;
    if (!o.tau.empty()) j["tau"] = o.tau;
    if (!o.order.empty()) j["narma_order"] = o.order;
    if (o.gamma) j["gamma"] = *o.gamma;
    if (o.ridge) j["ridge"] = *o.ridge;
    if (o.n_train) j["n_train"] = *o.n_train;
    if (task == qrc::TaskKind::Stm && !j.contains("axis")) j["axis"] = "tau";
    return qrc::config_from_json(j);
}

int execute(const qrc::ExperimentConfig &cfg, bool quiet) {
    const auto results = qrc::sweep(cfg, cfg.axis);
    const auto files = qrc::emit_outputs(results, cfg.out);
    int code = kOk;
    if (!quiet) {
        std::printf("%-16s %-14s %-14s %s\n", std::string(qrc::to_string(cfg.axis)).c_str(),
                    (results.front().metric + "_mean").c_str(), "sem", "n");
    }
    for (const auto &r : results) {
        if (r.error) {
            std::fprintf(stderr, "point %s failed: %s\n", r.label.c_str(), r.error->c_str());
            code = kRuntimeError;
            continue;
        }
        if (!quiet) {
            std::printf("%-16s %-14.6g %-14.6g %zu\n", r.label.empty() ? "-" : r.label.c_str(), r.mean, r.sem,
                        r.per_realization.size());
        }
    }
    std::fprintf(stderr, "wrote %s\n", files.result.string().c_str());
    return code;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Memory-augmented hybrid quantum reservoir computing benchmarks"};
    app.require_subcommand(1);

    Overrides o;
    auto *stm = app.add_subcommand("stm", "short-term memory capacity C(tau)");
    auto *narma = app.add_subcommand("narma", "NARMA-n capacity");
    auto *mg = app.add_subcommand("mg", "Mackey-Glass closed-loop valid prediction time");
    auto *sweep = app.add_subcommand("sweep", "run the sweep described by a config file");
    auto *validate = app.add_subcommand("validate-config", "check a config file and print it normalized");
    for (auto *cmd : {stm, narma, mg, sweep}) add_common(cmd, o);
    validate->add_option("-c,--config", o.config_path, "JSON config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    try {
        if (validate->parsed()) {
            const auto cfg = resolve(o, std::nullopt);
            std::cout << qrc::to_json(cfg).dump(2) << "\n";
            return kOk;
        }
        if (sweep->parsed()) {
            if (o.config_path.empty()) throw qrc::Error(qrc::ErrorKind::Config, "sweep needs --config");
            return execute(resolve(o, std::nullopt), o.quiet);
        }
        const auto task = stm->parsed() ? qrc::TaskKind::Stm : narma->parsed() ? qrc::TaskKind::Narma : qrc::TaskKind::Mg;
        return execute(resolve(o, task), o.quiet);
    } catch (const qrc::Error &e) {
        std::fprintf(stderr, "qrc: %s\n", e.what());
        return exit_code_for(e.kind());
    } catch (const std::exception &e) {
        std::fprintf(stderr, "qrc: %s\n", e.what());
        return kRuntimeError;
    }
}
