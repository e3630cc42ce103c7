#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rotorrec/basis.hpp"
#include "rotorrec/sampling.hpp"

namespace rotorrec {

// Multinomial RBM over N sites with D one-hot outcomes each and n_h binary
// hidden units. W[i] couples site i to the hidden layer (n_h x D), b holds
// per-site visible biases (N x D), c the hidden biases.
struct RbmParameters {
    int n_sites = 0;
    int ell_max = 0;
    int local_dim = 0;
    int n_hidden = 0;
    std::vector<Eigen::MatrixXd> W;
    Eigen::MatrixXd b;
    Eigen::VectorXd c;

    bool all_finite() const;
};

// Zero biases, weights ~ Normal(0, 0.01^2) from the given seed.
RbmParameters init_params(int n_sites, int ell_max, int n_hidden, std::uint64_t seed);

// Same shapes, all entries zero; gradient container.
RbmParameters zeros_like(const RbmParameters& params);

// Hidden-layer pre-activations c_j + sum_i W[i](j, sigma_i).
Eigen::VectorXd hidden_activations(const RbmParameters& params, const std::vector<int>& sigma);

// Effective visible energy of Eq.-style marginal:
//   -sum_i b(i, sigma_i) - sum_j softplus(c_j + sum_i W[i](j, sigma_i))
// computed with an overflow-safe softplus.
double effective_energy(const RbmParameters& params, const std::vector<int>& sigma);

// exp(-effective_energy / 2); strictly positive.
double unnormalized_psi(const RbmParameters& params, const std::vector<int>& sigma);

// p(h_j = 1 | sigma), elementwise logistic of the activations.
Eigen::VectorXd conditional_hidden(const RbmParameters& params, const std::vector<int>& sigma);

// Per-site softmax over d of b(i, d) + sum_j W[i](j, d) h_j; each row sums to 1.
Eigen::MatrixXd conditional_visible(const RbmParameters& params,
                                    const Eigen::VectorXd& hidden);

// State of one block Gibbs chain.
struct GibbsChainState {
    std::vector<int> visible;
    std::vector<std::uint8_t> hidden;
    int steps_taken = 0;

    static GibbsChainState all_zero(int n_sites, int n_hidden);
};

// Runs `count` independent chains from `start`, each for k full alternations
// (hidden then visible), and returns the final visible configurations. Chain
// c uses a generator derived from (seed, c), so results do not depend on
// execution order or worker count.
std::vector<RotorConfiguration> gibbs_sample(const RbmParameters& params,
                                             const GibbsChainState& start, int k,
                                             std::size_t count, std::uint64_t seed);

// CD gradient: mean of grad E over the positive batch minus mean over the
// negative batch, with
//   dE/dW_ijd = -p(h_j=1|sigma) sigma_id
//   dE/dc_j   = -p(h_j=1|sigma)
//   dE/db_id  = -sigma_id
RbmParameters gradients(const RbmParameters& params,
                        const std::vector<RotorConfiguration>& positive_batch,
                        const std::vector<RotorConfiguration>& negative_batch);

struct TrainingConfig {
    double learning_rate = 0.001;
    int positive_batch = 20;
    int negative_batch = 10;
    int gibbs_k = 10;
    int max_epochs = 2000;
    int eval_interval = 10;
    std::size_t eval_samples = 10000;
    int eval_gibbs_steps = 1000;
    std::uint64_t seed = 0;
    double target_delta = 0.05;

    void validate() const;
};

struct TraceRow {
    int epoch = 0;
    double delta = 0.0;
    double delta_stderr = 0.0;
    double kinetic = 0.0;
    double potential = 0.0;
};

// What the training evaluator reports back; produced by sampling the model
// and comparing the energy estimate to the exact reference.
struct EvalPoint {
    double delta = std::numeric_limits<double>::quiet_NaN();
    double delta_stderr = 0.0;
    double kinetic = 0.0;
    double potential = 0.0;
};

// Periodic evaluation callback: (params, epoch, derived seed) -> EvalPoint.
using Evaluator =
    std::function<EvalPoint(const RbmParameters&, int, std::uint64_t)>;

struct TrainResult {
    RbmParameters params;
    std::vector<TraceRow> trace;
    bool reached = false;
    int epochs_used = 0;
};

// Thrown when a parameter turns NaN/inf during training; carries the partial
// trace for post-mortem output.
struct TrainingDivergedError : std::runtime_error {
    TrainingDivergedError(const std::string& msg, std::vector<TraceRow> partial)
        : std::runtime_error(msg), trace(std::move(partial)) {}
    std::vector<TraceRow> trace;
};

// CD-k stochastic gradient descent over shuffled disjoint mini-batches.
// Negative chains restart from the current mini-batch's samples each update.
// The evaluator runs every eval_interval epochs; training stops at the first
// evaluation with delta <= target_delta or after max_epochs.
TrainResult train(const RbmParameters& initial, const MeasurementDataset& data,
                  const TrainingConfig& cfg, const Evaluator& evaluator);

// Validation-only full enumerations; refuse spaces above 10^6 configurations.
double exact_log_partition(const RbmParameters& params);
double exact_partition(const RbmParameters& params);
// q is indexed by the mixed-radix configuration index.
double exact_kl(const RbmParameters& params, const Eigen::VectorXd& q);

// Binary checkpoint: magic, version, N, ell_max, n_h, then W (site-major,
// each n_h x D row-major), b (row-major), c as little-endian doubles.
void save_params(const RbmParameters& params, const std::string& path);
RbmParameters load_params(const std::string& path);

}  // namespace rotorrec
