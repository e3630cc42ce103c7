#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rotorrec/experiments.hpp"

namespace rr = rotorrec::experiments;

namespace {

// Binds one CLI flag per config key; flags override file values.
struct KeyBinding {
    CLI::Option* option = nullptr;
    std::string key;
    std::string value;
};

class CommandSpec {
public:
    CommandSpec(CLI::App& app, const std::string& name, const std::string& description)
        : cmd_(app.add_subcommand(name, description)) {
        cmd_->add_option("--config", config_path_, "config file with 'key = value' lines");
        cmd_->add_option("--out", out_dir_, "output directory")->capture_default_str();
    }

    void bind(const std::string& flag, const std::string& key, const std::string& help) {
        bindings_.push_back(std::make_unique<KeyBinding>());
        KeyBinding& b = *bindings_.back();
        b.key = key;
        b.option = cmd_->add_option(flag, b.value, help);
    }

    CLI::App* cmd() { return cmd_; }

    rr::ExperimentConfig resolve() const {
        rr::ExperimentConfig config;
        if (!config_path_.empty()) config = rr::ExperimentConfig::from_file(config_path_);
        for (const auto& b : bindings_)
            if (b->option->count() > 0) config.set(b->key, b->value);
        return config;
    }

    const std::string& out_dir() const { return out_dir_; }

private:
    CLI::App* cmd_;
    std::string config_path_;
    std::string out_dir_ = ".";
    std::vector<std::unique_ptr<KeyBinding>> bindings_;
};

void bind_training_keys(CommandSpec& spec) {
    spec.bind("--eta", "eta", "learning rate");
    spec.bind("--positive-batch", "positive_batch", "mini-batch size |P|");
    spec.bind("--negative-batch", "negative_batch", "negative chain count |Gamma|");
    spec.bind("--gibbs-k", "gibbs_k", "CD Gibbs steps k");
    spec.bind("--max-epochs", "max_epochs", "epoch budget");
    spec.bind("--eval-interval", "eval_interval", "epochs between evaluations");
    spec.bind("--eval-samples", "eval_samples", "samples per evaluation");
    spec.bind("--eval-gibbs-steps", "eval_gibbs_steps", "Gibbs steps per evaluation sample");
    spec.bind("--target-delta", "target_delta", "learning criterion (use inf to disable)");
    spec.bind("--seed", "seed", "RNG seed");
    spec.bind("--tol", "tol", "eigensolver tolerance");
    spec.bind("--max-iter", "max_iter", "eigensolver iteration budget");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reconstruction toolkit for dipolar rotor chain ground states"};
    app.require_subcommand(1);

    CommandSpec ed(app, "ed", "exact diagonalization reference run");
    ed.bind("--n", "n", "number of rotors");
    ed.bind("--ell-max", "ell_max", "angular momentum truncation");
    ed.bind("--R", "R", "dimensionless separation");
    ed.bind("--tol", "tol", "solver tolerance");
    ed.bind("--max-iter", "max_iter", "solver iteration budget");
    ed.bind("--seed", "seed", "RNG seed");

    CommandSpec signs(app, "signs", "rectified-state error scan over truncations");
    signs.bind("--n", "n", "number of rotors");
    signs.bind("--R", "R", "single separation value");
    signs.bind("--R-list", "R_list", "comma-separated separations");
    signs.bind("--ell-max-list", "ell_max_list", "comma-separated truncations");
    signs.bind("--tol", "tol", "solver tolerance");
    signs.bind("--max-iter", "max_iter", "solver iteration budget");
    signs.bind("--seed", "seed", "RNG seed");

    CommandSpec sample(app, "sample", "draw projective measurements from the exact ground state");
    sample.bind("--n", "n", "number of rotors");
    sample.bind("--ell-max", "ell_max", "angular momentum truncation");
    sample.bind("--R", "R", "dimensionless separation");
    sample.bind("--count", "count", "number of samples");
    sample.bind("--data", "data", "output dataset path");
    sample.bind("--tol", "tol", "solver tolerance");
    sample.bind("--max-iter", "max_iter", "solver iteration budget");
    sample.bind("--seed", "seed", "RNG seed");

    CommandSpec train(app, "train", "train an RBM on a measurement dataset");
    train.bind("--data", "data", "input dataset path");
    train.bind("--n-h", "n_h", "hidden layer size");
    train.bind("--checkpoint", "checkpoint", "output checkpoint path");
    train.bind("--trace", "trace", "output trace CSV path");
    bind_training_keys(train);

    CommandSpec scale_hidden(app, "scale-hidden", "minimum hidden layer size scan");
    scale_hidden.bind("--data", "data", "input dataset path (saturated size)");
    scale_hidden.bind("--n-h-grid", "n_h_grid", "comma-separated hidden sizes");
    scale_hidden.bind("--retries", "retries", "training attempts per grid point");
    bind_training_keys(scale_hidden);

    CommandSpec scale_data(app, "scale-data", "minimum dataset size scan");
    scale_data.bind("--n-h", "n_h", "fixed hidden layer size (n_h_min + 1)");
    scale_data.bind("--d-grid", "d_grid", "comma-separated dataset sizes");
    scale_data.bind("--data", "data", "optional master dataset (prefixes are used)");
    scale_data.bind("--n", "n", "number of rotors (when generating data)");
    scale_data.bind("--ell-max", "ell_max", "truncation (when generating data)");
    scale_data.bind("--R", "R", "separation (when generating data)");
    scale_data.bind("--retries", "retries", "training attempts per grid point");
    bind_training_keys(scale_data);

    CommandSpec equilibrate(app, "equilibrate", "Gibbs equilibration and symmetry filtering");
    equilibrate.bind("--checkpoint", "checkpoint", "trained RBM checkpoint");
    equilibrate.bind("--R", "R", "dimensionless separation");
    equilibrate.bind("--k-schedule", "k_schedule", "comma-separated Gibbs step counts");
    equilibrate.bind("--n-chains", "n_chains", "independent chains per schedule point");
    equilibrate.bind("--seed", "seed", "RNG seed");
    equilibrate.bind("--tol", "tol", "solver tolerance");
    equilibrate.bind("--max-iter", "max_iter", "solver iteration budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return rr::kExitConfigError;
    }

    const auto dispatch = [&](CommandSpec& spec,
                              int (*runner)(rr::ExperimentConfig&, const std::string&)) -> int {
        try {
            std::filesystem::create_directories(spec.out_dir());
            rr::ExperimentConfig config = spec.resolve();
            return runner(config, spec.out_dir());
        } catch (const rr::ConfigError& err) {
            std::cerr << "config error: " << err.what() << "\n";
            return rr::kExitConfigError;
        } catch (const std::invalid_argument& err) {
            std::cerr << "config error: " << err.what() << "\n";
            return rr::kExitConfigError;
        } catch (const std::exception& err) {
            std::cerr << "numerical failure: " << err.what() << "\n";
            return rr::kExitNumericalFailure;
        }
    };

    if (ed.cmd()->parsed()) return dispatch(ed, rr::cmd_ed);
    if (signs.cmd()->parsed()) return dispatch(signs, rr::cmd_signs);
    if (sample.cmd()->parsed()) return dispatch(sample, rr::cmd_sample);
    if (train.cmd()->parsed()) return dispatch(train, rr::cmd_train);
    if (scale_hidden.cmd()->parsed()) return dispatch(scale_hidden, rr::cmd_scale_hidden);
    if (scale_data.cmd()->parsed()) return dispatch(scale_data, rr::cmd_scale_data);
    if (equilibrate.cmd()->parsed()) return dispatch(equilibrate, rr::cmd_equilibrate);
    return rr::kExitConfigError;
}
