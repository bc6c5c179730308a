#include "qrc/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "qrc/error.hpp"

namespace qrc {

using nlohmann::json;

std::string_view to_string(TaskKind t) noexcept {
    switch (t) {
    case TaskKind::Stm: return "stm";
    case TaskKind::Narma: return "narma";
    case TaskKind::Mg: return "mg";
    }
    return "?";
}

std::string_view to_string(BackendKind b) noexcept {
    return b == BackendKind::Ising ? "ising" : "rydberg";
}

std::string_view to_string(SweepAxis a) noexcept {
    switch (a) {
    case SweepAxis::None: return "none";
    case SweepAxis::Dt: return "dt";
    case SweepAxis::LR: return "l_r";
    case SweepAxis::NS: return "n_s";
    case SweepAxis::Tau: return "tau";
    case SweepAxis::NarmaOrder: return "n";
    case SweepAxis::ObservableSet: return "observable_set";
    case SweepAxis::PhiStar: return "phi_star";
    case SweepAxis::DeltaStar: return "delta_star";
    }
    return "?";
}

TaskKind parse_task(std::string_view s) {
    if (s == "stm") return TaskKind::Stm;
    if (s == "narma") return TaskKind::Narma;
    if (s == "mg") return TaskKind::Mg;
    throw Error(ErrorKind::Config, "unknown task '" + std::string(s) + "' (stm, narma, mg)");
}

BackendKind parse_backend(std::string_view s) {
    if (s == "ising") return BackendKind::Ising;
    if (s == "rydberg") return BackendKind::Rydberg;
    throw Error(ErrorKind::Config, "unknown backend '" + std::string(s) + "' (ising, rydberg)");
}

SweepAxis parse_axis(std::string_view s) {
    for (SweepAxis a : {SweepAxis::None, SweepAxis::Dt, SweepAxis::LR, SweepAxis::NS, SweepAxis::Tau,
                        SweepAxis::NarmaOrder, SweepAxis::ObservableSet, SweepAxis::PhiStar, SweepAxis::DeltaStar}) {
        if (s == to_string(a)) return a;
    }
    throw Error(ErrorKind::Config, "unknown sweep axis '" + std::string(s) + "'");
}

ExperimentConfig default_config(TaskKind task) {
    ExperimentConfig c;
    c.task = task;
    switch (task) {
    case TaskKind::Stm:
        c.gamma = 0.95;
        c.dt = {0.01};
        c.tau.clear();
        for (int t = 0; t <= 60; ++t) c.tau.push_back(t);
        break;
    case TaskKind::Narma:
        c.gamma = 0.95;
        c.dt = {0.05};
        break;
    case TaskKind::Mg:
        c.gamma = 0.6;
        c.dt = {10.0};
        c.l_r = {315};
        c.input_range = std::array<double, 2>{-1.0, 1.0};
        break;
    }
    return c;
}

namespace {

[[noreturn]] void config_error(const std::string &what) { throw Error(ErrorKind::Config, what); }

void check_keys(const json &obj, const std::string &section, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) {
        config_error("section '" + section + "' must be an object");
    }
    for (const auto &[key, value] : obj.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) {
            config_error("unknown key '" + (section.empty() ? key : section + "." + key) + "'");
        }
    }
}

template <typename T>
void read(const json &obj, const char *key, T &dst) {
    if (!obj.contains(key)) return;
    try {
        dst = obj.at(key).get<T>();
    } catch (const json::exception &e) {
        config_error(std::string("key '") + key + "': " + e.what());
    }
}

// Grids accept either a scalar or a list.
template <typename T>
void read_grid(const json &obj, const char *key, std::vector<T> &dst) {
    if (!obj.contains(key)) return;
    const json &v = obj.at(key);
    try {
        dst = v.is_array() ? v.get<std::vector<T>>() : std::vector<T>{v.get<T>()};
    } catch (const json::exception &e) {
        config_error(std::string("key '") + key + "': " + e.what());
    }
}

template <typename T>
void require_nonempty(const std::vector<T> &v, const char *name) {
    if (v.empty()) config_error(std::string("grid '") + name + "' is empty");
}

} // namespace

void ExperimentConfig::validate() const {
    require_nonempty(observables, "observables");
    require_nonempty(dt, "dt");
    require_nonempty(l_r, "l_r");
    require_nonempty(n_s, "n_s");
    require_nonempty(tau, "tau");
    require_nonempty(narma_order, "narma_order");
    require_nonempty(rydberg.phi_star, "rydberg.phi_star");
    require_nonempty(rydberg.delta_star, "rydberg.delta_star");

    if (ising.n_spins < 1 || ising.n_spins > 10) config_error("ising.n_spins must be in [1, 10]");
    if (!std::isfinite(ising.h) || !std::isfinite(ising.c_s) || !(ising.j > 0.0))
        config_error("ising parameters must be finite with j > 0");
    if (rydberg.n_atoms < 1 || rydberg.n_atoms > 10) config_error("rydberg.n_atoms must be in [1, 10]");
    if (!(rydberg.spacing >= 7.0)) config_error("rydberg.spacing must be >= 7 um");
    if (!(rydberg.c6 > 0.0) || !(rydberg.omega >= 0.0)) config_error("rydberg.c6 must be > 0 and omega >= 0");

    const int n = spins();
    for (const auto &name : observables) {
        try {
            const auto set = make_observable_set(name, n);
            for (int l : l_r) {
                if (l < static_cast<int>(set.size()) || l % static_cast<int>(set.size()) != 0) {
                    config_error("l_r = " + std::to_string(l) + " is not a multiple of the length " +
                                 std::to_string(set.size()) + " of observable set " + set.name);
                }
            }
        } catch (const Error &e) {
            if (e.kind() == ErrorKind::Config) throw;
            config_error(e.what());
        }
    }
    for (double d : dt)
        if (!(d >= 0.0) || !std::isfinite(d)) config_error("dt values must be finite and >= 0");
    if (!(gamma >= 0.0 && gamma <= 1.0)) config_error("gamma must lie in [0, 1]");
    if (!(ridge >= 0.0) || !std::isfinite(ridge)) config_error("ridge must be finite and >= 0");
    if (n_train < 1) config_error("n_train must be >= 1");
    if (n_realizations < 1) config_error("n_realizations must be >= 1");
    if (task == TaskKind::Mg) {
        if (horizon < 1) config_error("horizon must be >= 1");
        try {
            mg.params.validate();
        } catch (const Error &e) {
            config_error(e.what());
        }
    } else if (test_length < 2) {
        config_error("test_length must be >= 2");
    }
    for (int t : tau)
        if (t < 0 || static_cast<std::size_t>(t) > washout) config_error("tau values must lie in [0, washout]");
    for (int o : narma_order)
        if (o < 1 || static_cast<std::size_t>(o) > washout) config_error("narma_order values must lie in [1, washout]");
    if (input_range && !((*input_range)[1] > (*input_range)[0])) config_error("input_range must be [lo, hi] with hi > lo");

    if (initial_state != "auto" && initial_state != "up" && initial_state != "down") {
        if (static_cast<int>(initial_state.size()) != n ||
            initial_state.find_first_not_of("01") != std::string::npos) {
            config_error("initial_state must be auto, up, down, or a bitstring of length " + std::to_string(n));
        }
    }
    if (axis == SweepAxis::Tau && task != TaskKind::Stm) config_error("tau sweeps apply to the stm task only");
    if (axis == SweepAxis::NarmaOrder && task != TaskKind::Narma) config_error("n sweeps apply to the narma task only");
    if ((axis == SweepAxis::PhiStar || axis == SweepAxis::DeltaStar) && backend != BackendKind::Rydberg)
        config_error("phi_star / delta_star sweeps need the rydberg backend");
}

std::size_t ExperimentConfig::grid_size(SweepAxis a) const {
    switch (a) {
    case SweepAxis::None: return 1;
    case SweepAxis::Dt: return dt.size();
    case SweepAxis::LR: return l_r.size();
    case SweepAxis::NS: return n_s.size();
    case SweepAxis::Tau: return tau.size();
    case SweepAxis::NarmaOrder: return narma_order.size();
    case SweepAxis::ObservableSet: return observables.size();
    case SweepAxis::PhiStar: return rydberg.phi_star.size();
    case SweepAxis::DeltaStar: return rydberg.delta_star.size();
    }
    return 1;
}

ExperimentConfig ExperimentConfig::point(SweepAxis a, std::size_t i) const {
    auto pick = [&](auto grid, SweepAxis which) {
        const std::size_t idx = a == which ? i : 0;
        return decltype(grid){grid.at(idx)};
    };
    ExperimentConfig p = *this;
    p.dt = pick(dt, SweepAxis::Dt);
    p.l_r = pick(l_r, SweepAxis::LR);
    p.n_s = pick(n_s, SweepAxis::NS);
    p.tau = pick(tau, SweepAxis::Tau);
    p.narma_order = pick(narma_order, SweepAxis::NarmaOrder);
    p.observables = pick(observables, SweepAxis::ObservableSet);
    p.rydberg.phi_star = pick(rydberg.phi_star, SweepAxis::PhiStar);
    p.rydberg.delta_star = pick(rydberg.delta_star, SweepAxis::DeltaStar);
    p.axis = SweepAxis::None;
    return p;
}

json to_json(const ExperimentConfig &c) {
    json j;
    j["task"] = to_string(c.task);
    j["backend"] = to_string(c.backend);
    j["ising"] = {{"n_spins", c.ising.n_spins}, {"j", c.ising.j}, {"h", c.ising.h}, {"c_s", c.ising.c_s}};
    j["rydberg"] = {{"n_atoms", c.rydberg.n_atoms},
                    {"spacing", c.rydberg.spacing},
                    {"c6", c.rydberg.c6},
                    {"omega", c.rydberg.omega},
                    {"encoding", c.rydberg.encoding == Encoding::Detuning ? "detuning" : "phase"},
                    {"phi_star", c.rydberg.phi_star},
                    {"delta_star", c.rydberg.delta_star},
                    {"delta_scale", c.rydberg.delta_scale},
                    {"phi_scale", c.rydberg.phi_scale}};
    const auto &mp = c.mg.params;
    j["mg"] = {{"beta", mp.beta},       {"gamma", mp.gamma}, {"tau", mp.tau},
               {"n", mp.n},             {"sample_dt", mp.sample_dt}, {"history", mp.history},
               {"step", mp.step},       {"discard", mp.discard},     {"max_offset", c.mg.max_offset}};
    j["observables"] = c.observables;
    j["dt"] = c.dt;
    j["l_r"] = c.l_r;
    j["n_s"] = c.n_s;
    j["gamma"] = c.gamma;
    j["ridge"] = c.ridge;
    j["intercept"] = c.intercept;
    j["n_train"] = c.n_train;
    j["washout"] = c.washout;
    j["test_length"] = c.test_length;
    j["horizon"] = c.horizon;
    j["tau"] = c.tau;
    j["narma_order"] = c.narma_order;
    j["vpt_epsilon"] = c.vpt_epsilon;
    j["input_range"] = c.input_range ? json(*c.input_range) : json(nullptr);
    j["initial_state"] = c.initial_state;
    j["n_realizations"] = c.n_realizations;
    j["seed"] = c.seed;
    j["out"] = c.out;
    j["threads"] = c.threads;
    j["axis"] = to_string(c.axis);
    return j;
}

ExperimentConfig config_from_json(const json &j) {
    check_keys(j, "",
               {"task", "backend", "ising", "rydberg", "mg", "observables", "dt", "l_r", "n_s", "gamma", "ridge",
                "intercept", "n_train", "washout", "test_length", "horizon", "tau", "narma_order", "vpt_epsilon",
                "input_range", "initial_state", "n_realizations", "seed", "out", "threads", "axis"});

    std::string task = "stm";
    read(j, "task", task);
    ExperimentConfig c = default_config(parse_task(task));

    if (j.contains("backend")) {
        std::string b;
        read(j, "backend", b);
        c.backend = parse_backend(b);
    }
    if (j.contains("ising")) {
        const json &s = j.at("ising");
        check_keys(s, "ising", {"n_spins", "j", "h", "c_s"});
        read(s, "n_spins", c.ising.n_spins);
        read(s, "j", c.ising.j);
        read(s, "h", c.ising.h);
        read(s, "c_s", c.ising.c_s);
    }
    if (j.contains("rydberg")) {
        const json &s = j.at("rydberg");
        check_keys(s, "rydberg",
                   {"n_atoms", "spacing", "c6", "omega", "encoding", "phi_star", "delta_star", "delta_scale",
                    "phi_scale"});
        read(s, "n_atoms", c.rydberg.n_atoms);
        read(s, "spacing", c.rydberg.spacing);
        read(s, "c6", c.rydberg.c6);
        read(s, "omega", c.rydberg.omega);
        if (s.contains("encoding")) {
            std::string e;
            read(s, "encoding", e);
            if (e == "detuning") c.rydberg.encoding = Encoding::Detuning;
            else if (e == "phase") c.rydberg.encoding = Encoding::Phase;
            else config_error("rydberg.encoding must be 'detuning' or 'phase'");
        }
        read_grid(s, "phi_star", c.rydberg.phi_star);
        read_grid(s, "delta_star", c.rydberg.delta_star);
        read(s, "delta_scale", c.rydberg.delta_scale);
        read(s, "phi_scale", c.rydberg.phi_scale);
    }
    if (j.contains("mg")) {
        const json &s = j.at("mg");
        check_keys(s, "mg", {"beta", "gamma", "tau", "n", "sample_dt", "history", "step", "discard", "max_offset"});
        auto &mp = c.mg.params;
        read(s, "beta", mp.beta);
        read(s, "gamma", mp.gamma);
        read(s, "tau", mp.tau);
        read(s, "n", mp.n);
        read(s, "sample_dt", mp.sample_dt);
        read(s, "history", mp.history);
        read(s, "step", mp.step);
        read(s, "discard", mp.discard);
        read(s, "max_offset", c.mg.max_offset);
    }
    read_grid(j, "observables", c.observables);
    for (auto &name : c.observables) name = canonical_set_name(name);
    read_grid(j, "dt", c.dt);
    read_grid(j, "l_r", c.l_r);
    read_grid(j, "n_s", c.n_s);
    read(j, "gamma", c.gamma);
    read(j, "ridge", c.ridge);
    read(j, "intercept", c.intercept);
    read(j, "n_train", c.n_train);
    read(j, "washout", c.washout);
    read(j, "test_length", c.test_length);
    read(j, "horizon", c.horizon);
    read_grid(j, "tau", c.tau);
    read_grid(j, "narma_order", c.narma_order);
    read(j, "vpt_epsilon", c.vpt_epsilon);
    if (j.contains("input_range")) {
        if (j.at("input_range").is_null()) {
            c.input_range.reset();
        } else {
            std::array<double, 2> r{};
            read(j, "input_range", r);
            c.input_range = r;
        }
    }
    read(j, "initial_state", c.initial_state);
    read(j, "n_realizations", c.n_realizations);
    read(j, "seed", c.seed);
    read(j, "out", c.out);
    read(j, "threads", c.threads);
    if (j.contains("axis")) {
        std::string a;
        read(j, "axis", a);
        c.axis = parse_axis(a);
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open config " + path.string());
    }
    json j;
    try {
        j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error &e) {
        throw Error(ErrorKind::Config, path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

} // namespace qrc
