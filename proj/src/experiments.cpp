#include "rotorrec/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rotorrec/estimators.hpp"
#include "rotorrec/rng.hpp"

namespace rotorrec {
namespace experiments {

namespace {

constexpr const char* kLibraryVersion = "0.1.0";

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    const auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',' || ch == ' ' || ch == '\t') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    ExperimentConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected 'key = value' at " + path + ":" +
                              std::to_string(line_no));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config: empty key at " + path + ":" + std::to_string(line_no));
        config.values_[key] = value;
    }
    return config;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    values_[key] = value;
}

bool ExperimentConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::string ExperimentConfig::get_string(const std::string& key, const std::string& fallback) {
    const auto it = values_.find(key);
    const std::string v = it == values_.end() ? fallback : it->second;
    resolved_[key] = v;
    return v;
}

long long ExperimentConfig::get_int(const std::string& key, long long fallback) {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        resolved_[key] = std::to_string(fallback);
        return fallback;
    }
    try {
        const long long v = std::stoll(it->second);
        resolved_[key] = it->second;
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' is not an integer: " + it->second);
    }
}

double ExperimentConfig::get_real(const std::string& key, double fallback) {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        resolved_[key] = format_real(fallback);
        return fallback;
    }
    try {
        const std::string& v = it->second;
        resolved_[key] = v;
        if (v == "inf" || v == "infinity") return std::numeric_limits<double>::infinity();
        return std::stod(v);
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' is not a number: " + it->second);
    }
}

std::uint64_t ExperimentConfig::get_seed(const std::string& key, std::uint64_t fallback) {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        resolved_[key] = std::to_string(fallback);
        return fallback;
    }
    try {
        const std::uint64_t v = std::stoull(it->second);
        resolved_[key] = it->second;
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' is not a seed: " + it->second);
    }
}

std::vector<int> ExperimentConfig::get_int_list(const std::string& key,
                                                const std::vector<int>& fallback) {
    const auto it = values_.find(key);
    std::vector<int> out;
    if (it == values_.end()) {
        out = fallback;
    } else {
        for (const std::string& tok : split_list(it->second)) {
            try {
                out.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw ConfigError("config: key '" + key + "' has a non-integer entry: " + tok);
            }
        }
    }
    std::string joined;
    for (std::size_t i = 0; i < out.size(); ++i)
        joined += (i ? "," : "") + std::to_string(out[i]);
    resolved_[key] = joined;
    return out;
}

std::vector<double> ExperimentConfig::get_real_list(const std::string& key,
                                                    const std::vector<double>& fallback) {
    const auto it = values_.find(key);
    std::vector<double> out;
    if (it == values_.end()) {
        out = fallback;
    } else {
        for (const std::string& tok : split_list(it->second)) {
            try {
                out.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw ConfigError("config: key '" + key + "' has a non-numeric entry: " + tok);
            }
        }
    }
    std::string joined;
    for (std::size_t i = 0; i < out.size(); ++i) joined += (i ? "," : "") + format_real(out[i]);
    resolved_[key] = joined;
    return out;
}

std::string ExperimentConfig::require_string(const std::string& key) {
    if (!has(key)) throw ConfigError("config: missing required key '" + key + "'");
    return get_string(key, "");
}

long long ExperimentConfig::require_int(const std::string& key) {
    if (!has(key)) throw ConfigError("config: missing required key '" + key + "'");
    return get_int(key, 0);
}

double ExperimentConfig::require_real(const std::string& key) {
    if (!has(key)) throw ConfigError("config: missing required key '" + key + "'");
    return get_real(key, 0.0);
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : path_(path), n_columns_(columns.size()), out_(path) {
    if (!out_) throw std::runtime_error("csv: cannot open " + path);
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out_ << ',';
        out_ << columns[i];
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != n_columns_)
        throw std::runtime_error("csv: row width mismatch in " + path_);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
    out_.flush();
}

RunManifest::RunManifest(std::string command, const ExperimentConfig& config)
    : command_(std::move(command)),
      config_(&config),
      started_(std::chrono::steady_clock::now()),
      wall_started_(std::chrono::system_clock::now()) {}

void RunManifest::add_output(const std::string& path) { outputs_.push_back(path); }

void RunManifest::note(const std::string& key, const std::string& value) {
    notes_.emplace_back(key, value);
}

void RunManifest::note_real(const std::string& key, double value) {
    real_notes_.emplace_back(key, value);
}

void RunManifest::write(const std::string& path) const {
    nlohmann::json j;
    j["command"] = command_;
    j["version"] = kLibraryVersion;
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : config_->resolved()) cfg[k] = v;
    j["config"] = cfg;
    j["outputs"] = outputs_;
    for (const auto& [k, v] : notes_) j["results"][k] = v;
    for (const auto& [k, v] : real_notes_) j["results"][k] = v;
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started_);
    j["elapsed_seconds"] = elapsed.count();
    const std::time_t t = std::chrono::system_clock::to_time_t(wall_started_);
    char tbuf[64];
    std::strftime(tbuf, sizeof tbuf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    j["started_at"] = tbuf;

    std::ofstream out(path);
    if (!out) throw std::runtime_error("manifest: cannot open " + path);
    out << j.dump(2) << '\n';
}

namespace {

// ED solve shared by several commands.
GroundStateSolution solve_reference(int n_sites, int ell_max, double R, double tol, int max_iter,
                                    std::uint64_t seed) {
    const HilbertSpace space(n_sites, ell_max);
    const SparseHamiltonian h(space, R);
    return ground_state(h, tol, max_iter, seed);
}

std::vector<int> default_k_schedule() {
    return {1, 2, 5, 10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000};
}

TrainingConfig training_config_from(ExperimentConfig& config, std::uint64_t seed) {
    TrainingConfig cfg;
    cfg.learning_rate = config.get_real("eta", cfg.learning_rate);
    cfg.positive_batch = static_cast<int>(config.get_int("positive_batch", cfg.positive_batch));
    cfg.negative_batch = static_cast<int>(config.get_int("negative_batch", cfg.negative_batch));
    cfg.gibbs_k = static_cast<int>(config.get_int("gibbs_k", cfg.gibbs_k));
    cfg.max_epochs = static_cast<int>(config.get_int("max_epochs", cfg.max_epochs));
    cfg.eval_interval = static_cast<int>(config.get_int("eval_interval", cfg.eval_interval));
    cfg.eval_samples =
        static_cast<std::size_t>(config.get_int("eval_samples", static_cast<long long>(cfg.eval_samples)));
    cfg.eval_gibbs_steps =
        static_cast<int>(config.get_int("eval_gibbs_steps", cfg.eval_gibbs_steps));
    cfg.target_delta = config.get_real("target_delta", cfg.target_delta);
    cfg.seed = seed;
    return cfg;
}

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& trace) {
    CsvWriter csv(path, {"epoch", "delta", "delta_stderr", "kinetic", "potential"});
    for (const TraceRow& row : trace)
        csv.row({std::to_string(row.epoch), format_real(row.delta),
                 format_real(row.delta_stderr), format_real(row.kinetic),
                 format_real(row.potential)});
}

}  // namespace

int cmd_ed(ExperimentConfig& config, const std::string& out_dir) {
    const int n = static_cast<int>(config.require_int("n"));
    const int ell_max = static_cast<int>(config.get_int("ell_max", 3));
    const double R = config.require_real("R");
    const double tol = config.get_real("tol", 1e-10);
    const int max_iter = static_cast<int>(config.get_int("max_iter", 5000));
    const std::uint64_t seed = config.get_seed("seed", 20250617);

    RunManifest manifest("ed", config);
    const HilbertSpace space(n, ell_max);
    const SparseHamiltonian h(space, R);
    const GroundStateSolution sol = ground_state(h, tol, max_iter, seed);
    const double ratio = amplitude_ratio(sol);
    const double outside = mass_outside_sector(space, sol.amplitudes, 0, 0);

    CsvWriter csv(join_path(out_dir, "ed.csv"),
                  {"n", "ell_max", "R", "energy_0", "energy_1", "gap", "amplitude_ratio",
                   "residual", "mass_outside_sector", "method"});
    csv.row({std::to_string(n), std::to_string(ell_max), format_real(R),
             format_real(sol.energy_0), format_real(sol.energy_1), format_real(sol.gap),
             format_real(ratio), format_real(sol.residual), format_real(outside),
             sol.method == SolveMethod::dense ? "dense" : "lanczos"});
    manifest.add_output(csv.path());

    nlohmann::json report;
    report["n"] = n;
    report["ell_max"] = ell_max;
    report["R"] = R;
    report["energy_0"] = sol.energy_0;
    report["energy_1"] = sol.energy_1;
    report["gap"] = sol.gap;
    report["amplitude_ratio"] = ratio;
    report["residual"] = sol.residual;
    report["method"] = sol.method == SolveMethod::dense ? "dense" : "lanczos";
    report["sector"] = {{"total_m", 0}, {"ell_parity", 0}, {"mass_outside", outside}};
    const std::string report_path = join_path(out_dir, "ed.json");
    std::ofstream out(report_path);
    out << report.dump(2) << '\n';
    manifest.add_output(report_path);

    manifest.note_real("energy_0", sol.energy_0);
    manifest.note_real("gap", sol.gap);
    manifest.note_real("amplitude_ratio", ratio);
    manifest.write(join_path(out_dir, "ed_manifest.json"));
    std::cout << "E0 = " << format_real(sol.energy_0) << "  gap = " << format_real(sol.gap)
              << "  amplitude_ratio = " << format_real(ratio) << "\n";
    return kExitOk;
}

int cmd_signs(ExperimentConfig& config, const std::string& out_dir) {
    const int n = static_cast<int>(config.require_int("n"));
    const std::vector<double> r_list = config.get_real_list("R_list", {config.require_real("R")});
    const std::vector<int> ell_list = config.get_int_list("ell_max_list", {1, 2, 3, 4, 5});
    const double tol = config.get_real("tol", 1e-10);
    const int max_iter = static_cast<int>(config.get_int("max_iter", 5000));
    const std::uint64_t seed = config.get_seed("seed", 20250617);

    RunManifest manifest("signs", config);
    CsvWriter csv(join_path(out_dir, "signs.csv"),
                  {"R", "ell_max", "tau_minus", "epsilon", "gap", "epsilon_over_gap"});
    for (double R : r_list) {
        const auto rows = convergence_scan(n, R, ell_list, tol, max_iter, seed);
        for (const ConvergenceRow& row : rows)
            csv.row({format_real(R), std::to_string(row.ell_max), format_real(row.tau_minus),
                     format_real(row.epsilon), format_real(row.gap),
                     format_real(row.epsilon_over_gap)});
    }
    manifest.add_output(csv.path());
    manifest.write(join_path(out_dir, "signs_manifest.json"));
    return kExitOk;
}

int cmd_sample(ExperimentConfig& config, const std::string& out_dir) {
    const int n = static_cast<int>(config.require_int("n"));
    const int ell_max = static_cast<int>(config.get_int("ell_max", 3));
    const double R = config.require_real("R");
    const auto count = static_cast<std::size_t>(config.get_int("count", 10000));
    const std::uint64_t seed = config.get_seed("seed", 20250617);
    const double tol = config.get_real("tol", 1e-10);
    const int max_iter = static_cast<int>(config.get_int("max_iter", 5000));
    const std::string data_path = config.get_string("data", join_path(out_dir, "dataset.txt"));

    RunManifest manifest("sample", config);
    const HilbertSpace space(n, ell_max);
    const SparseHamiltonian h(space, R);
    const GroundStateSolution sol = ground_state(h, tol, max_iter, seed);
    const MeasurementDataset ds = sample_exact(sol, space, R, count, seed);
    write_dataset(ds, data_path);
    manifest.add_output(data_path);
    manifest.note("samples", std::to_string(ds.samples.size()));
    manifest.write(join_path(out_dir, "sample_manifest.json"));
    return kExitOk;
}

int cmd_train(ExperimentConfig& config, const std::string& out_dir) {
    const std::string data_path = config.require_string("data");
    const int n_h = static_cast<int>(config.require_int("n_h"));
    const std::uint64_t seed = config.get_seed("seed", 20250617);
    const double tol = config.get_real("tol", 1e-10);
    const int max_iter = static_cast<int>(config.get_int("max_iter", 5000));
    const TrainingConfig cfg = training_config_from(config, seed);
    const std::string checkpoint_path =
        config.get_string("checkpoint", join_path(out_dir, "checkpoint.rbm"));
    const std::string trace_path = config.get_string("trace", join_path(out_dir, "trace.csv"));

    RunManifest manifest("train", config);
    const MeasurementDataset data = read_dataset(data_path);
    const HilbertSpace space(data.n_sites, data.ell_max);
    const SparseHamiltonian h(space, data.R);
    const GroundStateSolution exact = ground_state(h, tol, max_iter, seed);
    const Evaluator evaluator =
        make_energy_evaluator(h, exact, cfg.eval_samples, cfg.eval_gibbs_steps);
    const RbmParameters initial = init_params(data.n_sites, data.ell_max, n_h, seed);

    manifest.note_real("energy_exact", exact.energy_0);
    manifest.note_real("gap", exact.gap);

    try {
        const TrainResult result = train(initial, data, cfg, evaluator);
        save_params(result.params, checkpoint_path);
        write_trace_csv(trace_path, result.trace);
        manifest.add_output(checkpoint_path);
        manifest.add_output(trace_path);
        manifest.note("reached", result.reached ? "true" : "false");
        manifest.note("epochs_used", std::to_string(result.epochs_used));
        if (!result.trace.empty())
            manifest.note_real("final_delta", result.trace.back().delta);
        manifest.write(join_path(out_dir, "train_manifest.json"));
        if (!result.trace.empty())
            std::cout << "final delta = " << format_real(result.trace.back().delta)
                      << " after " << result.epochs_used << " epochs\n";
        if (!result.reached && std::isfinite(cfg.target_delta)) return kExitCriterionNotReached;
        return kExitOk;
    } catch (const TrainingDivergedError& err) {
        write_trace_csv(trace_path, err.trace);
        manifest.add_output(trace_path);
        manifest.note("error", err.what());
        manifest.write(join_path(out_dir, "train_manifest.json"));
        std::cerr << err.what() << "\n";
        return kExitNumericalFailure;
    }
}

namespace {

struct ScaleContext {
    MeasurementDataset data;
    HilbertSpace space;
    SparseHamiltonian hamiltonian;
    GroundStateSolution exact;
};

ScaleContext make_scale_context(const MeasurementDataset& data, double tol, int max_iter,
                                std::uint64_t seed) {
    HilbertSpace space(data.n_sites, data.ell_max);
    SparseHamiltonian h(space, data.R);
    GroundStateSolution exact = ground_state(h, tol, max_iter, seed);
    return ScaleContext{data, std::move(space), std::move(h), std::move(exact)};
}

int run_scaling(ExperimentConfig& config, const std::string& out_dir, bool scan_hidden) {
    const std::uint64_t seed = config.get_seed("seed", 20250617);
    const double tol = config.get_real("tol", 1e-10);
    const int max_iter = static_cast<int>(config.get_int("max_iter", 5000));
    const int retries = static_cast<int>(config.get_int("retries", 1));
    TrainingConfig base = training_config_from(config, seed);

    const std::string command = scan_hidden ? "scale-hidden" : "scale-data";
    RunManifest manifest(command, config);

    // grids
    std::vector<int> grid;
    int fixed_n_h = 0;
    MeasurementDataset full_data;
    if (scan_hidden) {
        grid = config.get_int_list("n_h_grid", {1, 2, 3, 4, 5, 6, 7, 8});
        full_data = read_dataset(config.require_string("data"));
    } else {
        fixed_n_h = static_cast<int>(config.require_int("n_h"));
        std::vector<int> fallback;
        for (int d = 500; d <= 16000; d *= 2) fallback.push_back(d);
        grid = config.get_int_list("d_grid", fallback);
        if (config.has("data")) {
            full_data = read_dataset(config.get_string("data", ""));
            const int largest = *std::max_element(grid.begin(), grid.end());
            if (full_data.samples.size() < static_cast<std::size_t>(largest))
                throw ConfigError("scale-data: dataset smaller than the largest grid point");
        } else {
            const int n = static_cast<int>(config.require_int("n"));
            const int ell_max = static_cast<int>(config.get_int("ell_max", 3));
            const double R = config.require_real("R");
            const HilbertSpace space(n, ell_max);
            const SparseHamiltonian h(space, R);
            const GroundStateSolution sol = ground_state(h, tol, max_iter, seed);
            const int largest = *std::max_element(grid.begin(), grid.end());
            full_data = sample_exact(sol, space, R, static_cast<std::size_t>(largest),
                                     derive_seed(seed, 0xda7a));
        }
    }

    ScaleContext ctx = make_scale_context(full_data, tol, max_iter, seed);
    const Evaluator evaluator = make_energy_evaluator(ctx.hamiltonian, ctx.exact,
                                                      base.eval_samples, base.eval_gibbs_steps);

    const std::string csv_name = scan_hidden ? "scale_hidden.csv" : "scale_data.csv";
    CsvWriter csv(join_path(out_dir, csv_name),
                  {scan_hidden ? "n_h" : "d_size", "reached", "epochs_used", "final_delta",
                   "trace"});

    std::vector<ScalingResult> results;
    long long first_success = -1;
    for (int value : grid) {
        ScalingResult point;
        point.axis_value = value;

        MeasurementDataset data = ctx.data;
        int n_h = fixed_n_h;
        if (scan_hidden) {
            n_h = value;
        } else {
            data.samples.assign(ctx.data.samples.begin(),
                                ctx.data.samples.begin() + value);
        }

        for (int attempt = 0; attempt < retries && !point.reached; ++attempt) {
            TrainingConfig cfg = base;
            cfg.seed = derive_seed(seed, static_cast<std::uint64_t>(value),
                                   static_cast<std::uint64_t>(attempt));
            const RbmParameters initial =
                init_params(data.n_sites, data.ell_max, n_h, cfg.seed);
            TrainResult result;
            try {
                result = train(initial, data, cfg, evaluator);
            } catch (const TrainingDivergedError&) {
                continue;  // a diverged attempt counts as a failure, not an abort
            }
            char name[64];
            std::snprintf(name, sizeof name, "trace_%s_%d_a%d.csv",
                          scan_hidden ? "nh" : "d", value, attempt);
            point.trace_path = join_path(out_dir, name);
            write_trace_csv(point.trace_path, result.trace);
            point.reached = result.reached;
            point.epochs_used = result.epochs_used;
            point.final_delta = result.trace.empty()
                                    ? std::numeric_limits<double>::quiet_NaN()
                                    : result.trace.back().delta;
        }

        results.push_back(point);
        csv.row({std::to_string(point.axis_value), point.reached ? "1" : "0",
                 std::to_string(point.epochs_used), format_real(point.final_delta),
                 point.trace_path});
        if (point.reached) {
            first_success = value;
            break;  // first success on the grid defines the minimum
        }
    }

    manifest.add_output(csv.path());
    manifest.note(scan_hidden ? "n_h_min" : "d_min",
                  first_success < 0 ? "none" : std::to_string(first_success));
    manifest.write(join_path(out_dir, command == "scale-hidden" ? "scale_hidden_manifest.json"
                                                                : "scale_data_manifest.json"));
    if (first_success < 0) {
        std::cerr << command << ": no grid point reached the learning criterion\n";
        return kExitCriterionNotReached;
    }
    std::cout << (scan_hidden ? "n_h_min = " : "d_min = ") << first_success << "\n";
    return kExitOk;
}

}  // namespace

int cmd_scale_hidden(ExperimentConfig& config, const std::string& out_dir) {
    return run_scaling(config, out_dir, true);
}

int cmd_scale_data(ExperimentConfig& config, const std::string& out_dir) {
    return run_scaling(config, out_dir, false);
}

int cmd_equilibrate(ExperimentConfig& config, const std::string& out_dir) {
    const std::string checkpoint_path = config.require_string("checkpoint");
    const double R = config.require_real("R");
    const auto n_chains = static_cast<std::size_t>(config.get_int("n_chains", 10000));
    const std::uint64_t seed = config.get_seed("seed", 20250617);
    const double tol = config.get_real("tol", 1e-10);
    const int max_iter = static_cast<int>(config.get_int("max_iter", 5000));
    const std::vector<int> schedule = config.get_int_list("k_schedule", default_k_schedule());

    RunManifest manifest("equilibrate", config);
    const RbmParameters params = load_params(checkpoint_path);
    const HilbertSpace space(params.n_sites, params.ell_max);
    const SparseHamiltonian h(space, R);
    const GroundStateSolution exact = ground_state(h, tol, max_iter, seed);

    CsvWriter csv(join_path(out_dir, "equilibrate.csv"),
                  {"k", "delta_ns", "delta_ns_stderr", "delta_s", "delta_s_stderr", "f_ns",
                   "n_satisfying"});
    const GibbsChainState start = GibbsChainState::all_zero(params.n_sites, params.n_hidden);
    for (int k : schedule) {
        const auto samples = gibbs_sample(params, start, k, n_chains,
                                          derive_seed(seed, 0xec1, static_cast<std::uint64_t>(k)));
        const SymmetryPartition part = symmetry_violation_fraction(samples);
        const EnergyEstimate all = energy_rbm(params, samples, h);
        const double delta_ns = delta(all.total, exact.energy_0, exact.gap);
        const double delta_ns_err = all.std_error / exact.gap;

        double delta_s = std::numeric_limits<double>::quiet_NaN();
        double delta_s_err = std::numeric_limits<double>::quiet_NaN();
        if (!part.satisfying.empty()) {
            std::vector<RotorConfiguration> sat;
            sat.reserve(part.satisfying.size());
            for (std::size_t idx : part.satisfying) sat.push_back(samples[idx]);
            const EnergyEstimate s_est = energy_rbm(params, sat, h);
            delta_s = delta(s_est.total, exact.energy_0, exact.gap);
            delta_s_err = s_est.std_error / exact.gap;
        }
        csv.row({std::to_string(k), format_real(delta_ns), format_real(delta_ns_err),
                 format_real(delta_s), format_real(delta_s_err), format_real(part.fraction),
                 std::to_string(part.satisfying.size())});
    }
    manifest.add_output(csv.path());
    manifest.write(join_path(out_dir, "equilibrate_manifest.json"));
    return kExitOk;
}

}  // namespace experiments
}  // namespace rotorrec
