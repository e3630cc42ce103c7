#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rotorrec/rbm.hpp"
#include "rotorrec/signs.hpp"

namespace rotorrec {
namespace experiments {

// Flat key/value experiment configuration. Files are UTF-8 'key = value'
// lines with '#' comments; CLI flags share the key names and win on
// conflict. Every read is recorded so the run manifest can list the fully
// resolved configuration.
class ExperimentConfig {
public:
    ExperimentConfig() = default;

    static ExperimentConfig from_file(const std::string& path);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback);
    long long get_int(const std::string& key, long long fallback);
    double get_real(const std::string& key, double fallback);
    std::uint64_t get_seed(const std::string& key, std::uint64_t fallback);
    std::vector<int> get_int_list(const std::string& key, const std::vector<int>& fallback);
    std::vector<double> get_real_list(const std::string& key,
                                      const std::vector<double>& fallback);

    // required variants: throw ConfigError when the key is absent
    std::string require_string(const std::string& key);
    long long require_int(const std::string& key);
    double require_real(const std::string& key);

    const std::map<std::string, std::string>& resolved() const { return resolved_; }
    const std::map<std::string, std::string>& raw() const { return values_; }

private:
    std::map<std::string, std::string> values_;
    std::map<std::string, std::string> resolved_;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// CSV writing with full round-trip decimals (17 significant digits).
std::string format_real(double v);

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::size_t n_columns_;
    std::ofstream out_;
};

// One JSON run manifest per invocation: resolved config, library version,
// wall-clock timings, produced files.
class RunManifest {
public:
    RunManifest(std::string command, const ExperimentConfig& config);
    void add_output(const std::string& path);
    void note(const std::string& key, const std::string& value);
    void note_real(const std::string& key, double value);
    void write(const std::string& path) const;

private:
    std::string command_;
    const ExperimentConfig* config_;
    std::vector<std::string> outputs_;
    std::vector<std::pair<std::string, std::string>> notes_;
    std::vector<std::pair<std::string, double>> real_notes_;
    std::chrono::steady_clock::time_point started_;
    std::chrono::system_clock::time_point wall_started_;
};

// exit codes shared by all subcommands
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalFailure = 3;
inline constexpr int kExitCriterionNotReached = 4;

int cmd_ed(ExperimentConfig& config, const std::string& out_dir);
int cmd_signs(ExperimentConfig& config, const std::string& out_dir);
int cmd_sample(ExperimentConfig& config, const std::string& out_dir);
int cmd_train(ExperimentConfig& config, const std::string& out_dir);
int cmd_scale_hidden(ExperimentConfig& config, const std::string& out_dir);
int cmd_scale_data(ExperimentConfig& config, const std::string& out_dir);
int cmd_equilibrate(ExperimentConfig& config, const std::string& out_dir);

// Shared by cmd_scale_*: one row per grid point.
struct ScalingResult {
    long long axis_value = 0;
    bool reached = false;
    int epochs_used = 0;
    double final_delta = 0.0;
    std::string trace_path;
};

}  // namespace experiments
}  // namespace rotorrec
