#include "qrc/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "qrc/error.hpp"
#include "qrc/metrics.hpp"
#include "qrc/random.hpp"
#include "qrc/readout.hpp"
#include "qrc/tasks.hpp"

#ifndef QRC_VERSION
#define QRC_VERSION "0.0.0"
#endif

namespace qrc {

using nlohmann::json;

std::string_view library_version() noexcept { return QRC_VERSION; }

std::pair<double, double> mean_and_sem(const std::vector<double> &values) {
    if (values.empty()) {
        return {0.0, 0.0};
    }
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    if (values.size() < 2) {
        return {mean, 0.0};
    }
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

Realization realization_seeds(std::uint64_t master, std::size_t index) {
    return {derive_seed(master, index, "couplings"), derive_seed(master, index, "task")};
}

QuantumReservoir::HamiltonianBuilder hamiltonian_builder(const ExperimentConfig &p, std::uint64_t coupling_seed) {
    if (p.backend == BackendKind::Ising) {
        IsingParams ip = make_ising(coupling_seed, p.ising.n_spins, p.ising.j, p.ising.h, p.ising.c_s);
        return [ip = std::move(ip)](double s) { return build_ising(ip, s); };
    }
    RydbergParams rp = RydbergParams::chain(p.rydberg.n_atoms, p.rydberg.spacing);
    rp.c6 = p.rydberg.c6;
    rp.omega = p.rydberg.omega;
    rp.encoding = p.rydberg.encoding;
    rp.phi_star = p.rydberg.phi_star.front();
    rp.delta_star = p.rydberg.delta_star.front();
    rp.delta_scale = p.rydberg.delta_scale;
    rp.phi_scale = p.rydberg.phi_scale;
    return [rp = std::move(rp)](double s) { return build_rydberg(rp, s); };
}

StateVector initial_state(const ExperimentConfig &p) {
    const int n = p.spins();
    const std::uint64_t all_ones = (std::uint64_t{1} << n) - 1;
    std::string mode = p.initial_state;
    if (mode == "auto") {
        // Rydberg ground state: every atom has n = (1 + Z)/2 = 0, i.e. bit 1.
        mode = p.backend == BackendKind::Ising ? "up" : "down";
    }
    if (mode == "up") return basis_state(n, 0);
    if (mode == "down") return basis_state(n, all_ones);
    return basis_state(n, std::stoull(mode, nullptr, 2));
}

ReservoirConfig reservoir_config(const ExperimentConfig &p) {
    ReservoirConfig rc;
    rc.gamma = p.gamma;
    rc.n_s = p.n_s.front();
    rc.l_r = p.l_r.front();
    rc.m_len = static_cast<int>(make_observable_set(p.observables.front(), p.spins()).size());
    rc.validate();
    return rc;
}

InputEncoding encoding_for(const ExperimentConfig &p, std::span<const double> training_inputs) {
    if (training_inputs.empty()) {
        throw Error(ErrorKind::InsufficientLength, "empty training window");
    }
    const auto [lo_it, hi_it] = std::minmax_element(training_inputs.begin(), training_inputs.end());
    if (p.backend == BackendKind::Rydberg) {
        return InputEncoding::min_max(*lo_it, *hi_it, 0.0, 1.0);
    }
    if (p.input_range) {
        return InputEncoding::min_max(*lo_it, *hi_it, (*p.input_range)[0], (*p.input_range)[1]);
    }
    return {};
}

QuantumReservoir make_backend(const ExperimentConfig &p, std::uint64_t coupling_seed, InputEncoding encoding) {
    return QuantumReservoir(hamiltonian_builder(p, coupling_seed), p.dt.front(), initial_state(p),
                            make_observable_set(p.observables.front(), p.spins()), encoding);
}

namespace {

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

RealVector as_vector(std::span<const double> s) {
    return Eigen::Map<const RealVector>(s.data(), static_cast<Eigen::Index>(s.size()));
}

// Capacity on held-out rows for several targets sharing one reservoir run.
// `target_of(j, k)` is the j-th target at absolute step k.
template <typename TargetFn>
std::vector<double> capacity_scores(const ExperimentConfig &p, const Realization &seeds,
                                    std::span<const double> inputs, std::size_t n_targets, TargetFn target_of) {
    const std::size_t train_end = p.washout + p.n_train;
    const auto encoding = encoding_for(p, inputs.subspan(0, train_end));
    const auto backend = make_backend(p, seeds.coupling_seed, encoding);
    const auto rc = reservoir_config(p);
    const ReservoirRun rr = run(inputs, backend, rc, p.washout);

    const auto n_train = static_cast<Eigen::Index>(p.n_train);
    const auto n_test = static_cast<Eigen::Index>(p.test_length);
    RealMatrix y_train(n_train, static_cast<Eigen::Index>(n_targets));
    for (std::size_t j = 0; j < n_targets; ++j) {
        for (Eigen::Index i = 0; i < n_train; ++i) {
            y_train(i, static_cast<Eigen::Index>(j)) = target_of(j, p.washout + static_cast<std::size_t>(i));
        }
    }
    const auto models = train_many(rr.rows.topRows(n_train), y_train, p.ridge, p.intercept);
    const RealMatrix test_rows = rr.rows.middleRows(n_train, n_test);

    std::vector<double> scores(n_targets);
    std::vector<double> truth(static_cast<std::size_t>(n_test));
    for (std::size_t j = 0; j < n_targets; ++j) {
        const RealVector pred = predict(models[j], test_rows);
        for (Eigen::Index i = 0; i < n_test; ++i) {
            truth[static_cast<std::size_t>(i)] = target_of(j, train_end + static_cast<std::size_t>(i));
        }
        scores[j] = capacity(truth, std::span<const double>(pred.data(), static_cast<std::size_t>(pred.size())));
    }
    return scores;
}

std::vector<double> eval_stm(const ExperimentConfig &p, const Realization &seeds, std::span<const int> taus) {
    const std::size_t length = p.washout + p.n_train + p.test_length;
    const TaskSeries ts = gen_stm(seeds.task_seed, length, 0);
    const std::vector<double> &s = ts.inputs;
    return capacity_scores(p, seeds, s, taus.size(), [&](std::size_t j, std::size_t k) {
        return s[k - static_cast<std::size_t>(taus[j])];
    });
}

std::vector<double> eval_narma(const ExperimentConfig &p, const Realization &seeds, std::span<const int> orders) {
    const std::size_t length = p.washout + p.n_train + p.test_length;
    const TaskSeries base = gen_narma(seeds.task_seed, length, orders.front());
    std::vector<std::vector<double>> targets;
    targets.reserve(orders.size());
    for (int n : orders) {
        targets.push_back(narma(base.inputs, n));
    }
    return capacity_scores(p, seeds, base.inputs, orders.size(),
                           [&](std::size_t j, std::size_t k) { return targets[j][k]; });
}

std::size_t mg_series_length(const ExperimentConfig &p) {
    return p.mg.max_offset + p.washout + p.n_train + 1 + p.horizon;
}

double eval_mg(const ExperimentConfig &p, const Realization &seeds, const std::vector<double> &series,
               ForecastTrace *trace) {
    Rng rng(seeds.task_seed);
    const std::size_t offset = static_cast<std::size_t>(rng.below(p.mg.max_offset + 1));
    const std::size_t train_end = p.washout + p.n_train;
    std::span<const double> window(series.data() + offset, train_end + 1 + p.horizon);

    const auto inputs = window.subspan(0, train_end);
    const auto encoding = encoding_for(p, window.subspan(0, train_end + 1));
    const auto backend = make_backend(p, seeds.coupling_seed, encoding);
    const auto rc = reservoir_config(p);
    ReservoirRun rr = run(inputs, backend, rc, p.washout);

    const RealVector y = as_vector(window.subspan(p.washout + 1, p.n_train));
    const ReadoutModel model = train(rr.rows, y, p.ridge, p.intercept);

    const auto truth = window.subspan(train_end + 1, p.horizon);
    const std::vector<double> pred = forecast(model, backend, rc, std::move(rr.final_state), window[train_end],
                                              p.horizon);
    const double sigma = population_std(truth);
    const auto t = vpt(truth, pred, sigma, p.vpt_epsilon);
    if (trace != nullptr) {
        trace->truth.assign(truth.begin(), truth.end());
        trace->prediction = pred;
        trace->sigma = sigma;
    }
    return static_cast<double>(t);
}

// Runs fn(i) for i in [0, n) on a bounded pool; exceptions are captured per
// index so completion order never affects the outcome.
template <typename Fn>
std::vector<std::exception_ptr> parallel_for(std::size_t n, std::size_t threads, Fn fn) {
    std::vector<std::exception_ptr> errors(n);
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min(threads, n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    return errors;
}

std::string describe(const std::exception_ptr &e, ErrorKind *kind) {
    try {
        std::rethrow_exception(e);
    } catch (const Error &err) {
        *kind = err.kind();
        return err.what();
    } catch (const std::exception &err) {
        *kind = ErrorKind::Divergence;
        return err.what();
    }
}

std::pair<double, std::string> coordinate(const ExperimentConfig &point, SweepAxis axis, std::size_t i,
                                          const ExperimentConfig &full) {
    switch (axis) {
    case SweepAxis::None: return {0.0, ""};
    case SweepAxis::Dt: return {point.dt.front(), format_number(point.dt.front())};
    case SweepAxis::LR: return {double(point.l_r.front()), std::to_string(point.l_r.front())};
    case SweepAxis::NS: return {double(point.n_s.front()), std::to_string(point.n_s.front())};
    case SweepAxis::Tau: return {double(full.tau[i]), std::to_string(full.tau[i])};
    case SweepAxis::NarmaOrder: return {double(full.narma_order[i]), std::to_string(full.narma_order[i])};
    case SweepAxis::ObservableSet: return {double(i), point.observables.front()};
    case SweepAxis::PhiStar:
        return {point.rydberg.phi_star.front(), format_number(point.rydberg.phi_star.front())};
    case SweepAxis::DeltaStar:
        return {point.rydberg.delta_star.front(), format_number(point.rydberg.delta_star.front())};
    }
    return {0.0, ""};
}

std::vector<RunResult> sweep_impl(const ExperimentConfig &cfg, SweepAxis axis, bool rethrow) {
    cfg.validate();
    if (cfg.grid_size(axis) == 0) {
        throw Error(ErrorKind::Config, "sweep axis grid is empty");
    }
    // Tau and NARMA order only change the targets: one reservoir run per
    // realization serves every grid value.
    const bool target_axis = (axis == SweepAxis::Tau && cfg.task == TaskKind::Stm) ||
                             (axis == SweepAxis::NarmaOrder && cfg.task == TaskKind::Narma);
    const std::size_t n_values = cfg.grid_size(axis);
    const std::size_t n_points = target_axis ? 1 : n_values;
    const std::size_t n_real = cfg.n_realizations;

    std::vector<double> series;
    if (cfg.task == TaskKind::Mg) {
        series = mackey_glass(cfg.mg.params, mg_series_length(cfg));
    }

    std::vector<ExperimentConfig> points;
    for (std::size_t p = 0; p < n_values; ++p) {
        points.push_back(cfg.point(axis, p));
    }

    // metric[value][realization]
    std::vector<std::vector<double>> metric(n_values, std::vector<double>(n_real, 0.0));
    std::vector<std::vector<ForecastTrace>> traces(n_values, std::vector<ForecastTrace>(n_real));
    std::vector<double> seconds(n_values, 0.0);
    std::mutex seconds_mutex;

    const auto errors = parallel_for(n_points * n_real, cfg.threads, [&](std::size_t unit) {
        const std::size_t p = unit / n_real;
        const std::size_t r = unit % n_real;
        const auto start = std::chrono::steady_clock::now();
        const Realization seeds = realization_seeds(cfg.seed, r);
        const ExperimentConfig &point = target_axis ? cfg.point(SweepAxis::None, 0) : points[p];
        if (cfg.task == TaskKind::Mg) {
            ForecastTrace &tr = traces[p][r];
            tr.realization = r;
            metric[p][r] = eval_mg(point, seeds, series, &tr);
        } else {
            std::vector<int> targets;
            if (target_axis) {
                targets = cfg.task == TaskKind::Stm ? cfg.tau : cfg.narma_order;
            } else {
                targets = {cfg.task == TaskKind::Stm ? point.tau.front() : point.narma_order.front()};
            }
            const auto scores = cfg.task == TaskKind::Stm ? eval_stm(point, seeds, targets)
                                                          : eval_narma(point, seeds, targets);
            for (std::size_t j = 0; j < scores.size(); ++j) {
                metric[target_axis ? j : p][r] = scores[j];
            }
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::lock_guard lock(seconds_mutex);
        if (target_axis) {
            for (auto &s : seconds) s += dt / static_cast<double>(n_values);
        } else {
            seconds[p] += dt;
        }
    });

    std::vector<RunResult> results;
    for (std::size_t v = 0; v < n_values; ++v) {
        RunResult res;
        res.config = to_json(points[v]);
        res.axis = std::string(to_string(axis));
        std::tie(res.value, res.label) = coordinate(points[v], axis, v, cfg);
        res.metric = cfg.task == TaskKind::Mg ? "vpt" : "capacity";
        res.version = std::string(library_version());
        res.wall_seconds = seconds[v];

        const std::size_t p = target_axis ? 0 : v;
        for (std::size_t r = 0; r < n_real; ++r) {
            const auto &err = errors[p * n_real + r];
            if (!err) continue;
            ErrorKind kind = ErrorKind::Divergence;
            const std::string msg = "realization " + std::to_string(r) + ": " + describe(err, &kind);
            if (rethrow) {
                throw Error(kind, msg);
            }
            res.error = msg;
            break;
        }
        if (!res.error) {
            res.per_realization = metric[v];
            std::tie(res.mean, res.sem) = mean_and_sem(res.per_realization);
            if (cfg.task == TaskKind::Mg) {
                const auto best = std::max_element(res.per_realization.begin(), res.per_realization.end());
                res.trace = std::move(traces[v][static_cast<std::size_t>(best - res.per_realization.begin())]);
            }
        }
        results.push_back(std::move(res));
    }
    return results;
}

void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    }
    out << content;
    out.flush();
    if (!out) {
        throw Error(ErrorKind::Io, "write failed for " + path.string());
    }
}

json trace_json_stub(const RunResult &r) {
    if (!r.trace) return nullptr;
    return {{"realization", r.trace->realization}, {"sigma", r.trace->sigma}, {"length", r.trace->truth.size()}};
}

} // namespace

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

RunResult run_experiment(const ExperimentConfig &cfg) {
    return std::move(sweep_impl(cfg, SweepAxis::None, /*rethrow=*/true).front());
}

std::vector<RunResult> sweep(const ExperimentConfig &cfg, SweepAxis axis) {
    return sweep_impl(cfg, axis, /*rethrow=*/false);
}

EmittedFiles emit_outputs(const std::vector<RunResult> &results, const std::filesystem::path &dir) {
    if (results.empty()) {
        throw Error(ErrorKind::Io, "no results to write to " + dir.string());
    }
    const json &c0 = results.front().config;
    std::string stem = c0.at("task").get<std::string>() + "_" + c0.at("backend").get<std::string>() + "_seed" +
                       std::to_string(c0.at("seed").get<std::uint64_t>());
    if (results.front().axis != "none") {
        stem += "_" + results.front().axis;
    }

    EmittedFiles files;
    files.result = dir / (stem + ".json");
    files.table = dir / (stem + ".csv");

    json doc;
    doc["version"] = std::string(library_version());
    doc["axis"] = results.front().axis;
    doc["metric"] = results.front().metric;
    doc["conventions"] = {
        {"sem", "sample standard deviation / sqrt(n_realizations)"},
        {"vpt_sigma", "population standard deviation of the true test-window series"},
        {"capacity", "squared Pearson correlation on held-out steps"},
        {"seeds", "realization r uses derive_seed(seed, r, 'couplings'|'task') at every sweep point"},
    };
    std::ostringstream table;
    table << "sweep_value,metric_mean,metric_sem,n_realizations\n";
    std::vector<std::pair<std::filesystem::path, std::string>> trace_files;

    json points = json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        const RunResult &r = results[i];
        json pt = {{"config", r.config},
                   {"value", r.value},
                   {"label", r.label},
                   {"per_realization", r.per_realization},
                   {"mean", r.mean},
                   {"sem", r.sem},
                   {"n_realizations", r.per_realization.size()},
                   {"wall_seconds", r.wall_seconds},
                   {"version", r.version},
                   {"error", r.error ? json(*r.error) : json(nullptr)},
                   {"trace", trace_json_stub(r)}};
        if (r.trace) {
            const auto path = dir / (stem + "_trace" + std::to_string(i) + ".csv");
            std::ostringstream tr;
            tr << "step,truth,prediction\n";
            for (std::size_t k = 0; k < r.trace->truth.size(); ++k) {
                tr << k + 1 << ',' << format_number(r.trace->truth[k]) << ','
                   << format_number(r.trace->prediction[k]) << '\n';
            }
            pt["trace"]["file"] = path.filename().string();
            trace_files.emplace_back(path, tr.str());
        }
        points.push_back(std::move(pt));
        if (!r.error) {
            table << csv_field(r.label.empty() ? format_number(r.value) : r.label) << ','
                  << format_number(r.mean) << ',' << format_number(r.sem) << ',' << r.per_realization.size()
                  << '\n';
        }
    }
    doc["points"] = std::move(points);

    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
    }
    write_file(files.result, doc.dump(2) + "\n");
    write_file(files.table, table.str());
    for (const auto &[path, content] : trace_files) {
        write_file(path, content);
        files.traces.push_back(path);
    }
    return files;
}

std::vector<RunResult> load_results(const std::filesystem::path &result_file) {
    std::ifstream in(result_file);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open " + result_file.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw Error(ErrorKind::Io, result_file.string() + ": " + e.what());
    }
    std::vector<RunResult> out;
    for (const json &pt : doc.at("points")) {
        RunResult r;
        r.config = pt.at("config");
        r.axis = doc.at("axis").get<std::string>();
        r.metric = doc.at("metric").get<std::string>();
        r.value = pt.at("value").get<double>();
        r.label = pt.at("label").get<std::string>();
        r.per_realization = pt.at("per_realization").get<std::vector<double>>();
        r.mean = pt.at("mean").get<double>();
        r.sem = pt.at("sem").get<double>();
        r.wall_seconds = pt.at("wall_seconds").get<double>();
        r.version = pt.at("version").get<std::string>();
        if (!pt.at("error").is_null()) {
            r.error = pt.at("error").get<std::string>();
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace qrc
