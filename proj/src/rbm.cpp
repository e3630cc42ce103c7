#include "rotorrec/rbm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>

#include "rotorrec/rng.hpp"

namespace rotorrec {

namespace {

// seed-stream tags for the independent RNG uses inside training
constexpr std::uint64_t kStreamInit = 0x11;
constexpr std::uint64_t kStreamShuffle = 0x22;
constexpr std::uint64_t kStreamNegative = 0x33;
constexpr std::uint64_t kStreamEval = 0x44;
constexpr std::uint64_t kStreamChain = 0x55;

double softplus(double x) {
    // max(x,0) + log1p(exp(-|x|)): no overflow anywhere in double range
    return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

void check_sigma(const RbmParameters& params, const std::vector<int>& sigma) {
    if (static_cast<int>(sigma.size()) != params.n_sites)
        throw std::invalid_argument("rbm: configuration has wrong number of sites");
}

// One in-place block Gibbs alternation (hidden then visible).
void gibbs_step(const RbmParameters& params, std::vector<int>& sigma,
                std::vector<std::uint8_t>& hidden, std::mt19937_64& gen) {
    const int n_h = params.n_hidden;
    const int d = params.local_dim;

    Eigen::VectorXd act = hidden_activations(params, sigma);
    for (int j = 0; j < n_h; ++j)
        hidden[static_cast<std::size_t>(j)] = uniform01(gen) < sigmoid(act[j]) ? 1 : 0;

    for (int i = 0; i < params.n_sites; ++i) {
        Eigen::VectorXd logits = params.b.row(i).transpose();
        for (int j = 0; j < n_h; ++j)
            if (hidden[static_cast<std::size_t>(j)]) logits += params.W[static_cast<std::size_t>(i)].row(j).transpose();
        const double top = logits.maxCoeff();
        double z = 0.0;
        for (int dd = 0; dd < d; ++dd) z += std::exp(logits[dd] - top);
        double u = uniform01(gen) * z;
        int pick = d - 1;
        double acc = 0.0;
        for (int dd = 0; dd < d; ++dd) {
            acc += std::exp(logits[dd] - top);
            if (u < acc) {
                pick = dd;
                break;
            }
        }
        sigma[static_cast<std::size_t>(i)] = pick;
    }
}

void accumulate_energy_gradient(const RbmParameters& params, const std::vector<int>& sigma,
                                double weight, RbmParameters& grad) {
    const Eigen::VectorXd p_h = conditional_hidden(params, sigma);
    for (int i = 0; i < params.n_sites; ++i) {
        const int d = sigma[static_cast<std::size_t>(i)];
        grad.W[static_cast<std::size_t>(i)].col(d) -= weight * p_h;
        grad.b(i, d) -= weight;
    }
    grad.c -= weight * p_h;
}

}  // namespace

bool RbmParameters::all_finite() const {
    for (const auto& w : W)
        if (!w.allFinite()) return false;
    return b.allFinite() && c.allFinite();
}

RbmParameters init_params(int n_sites, int ell_max, int n_hidden, std::uint64_t seed) {
    if (n_sites < 1 || n_hidden < 1)
        throw std::invalid_argument("init_params: need at least one site and one hidden unit");
    RbmParameters p;
    p.n_sites = n_sites;
    p.ell_max = ell_max;
    p.local_dim = rotorrec::local_dim(ell_max);
    p.n_hidden = n_hidden;
    std::mt19937_64 gen(derive_seed(seed, kStreamInit));
    p.W.resize(static_cast<std::size_t>(n_sites));
    for (auto& w : p.W) {
        w.resize(n_hidden, p.local_dim);
        for (int j = 0; j < n_hidden; ++j)
            for (int d = 0; d < p.local_dim; ++d) w(j, d) = 0.01 * normal01(gen);
    }
    p.b = Eigen::MatrixXd::Zero(n_sites, p.local_dim);
    p.c = Eigen::VectorXd::Zero(n_hidden);
    return p;
}

RbmParameters zeros_like(const RbmParameters& params) {
    RbmParameters g = params;
    for (auto& w : g.W) w.setZero();
    g.b.setZero();
    g.c.setZero();
    return g;
}

Eigen::VectorXd hidden_activations(const RbmParameters& params, const std::vector<int>& sigma) {
    check_sigma(params, sigma);
    Eigen::VectorXd act = params.c;
    for (int i = 0; i < params.n_sites; ++i)
        act += params.W[static_cast<std::size_t>(i)].col(sigma[static_cast<std::size_t>(i)]);
    return act;
}

double effective_energy(const RbmParameters& params, const std::vector<int>& sigma) {
    check_sigma(params, sigma);
    double e = 0.0;
    for (int i = 0; i < params.n_sites; ++i)
        e -= params.b(i, sigma[static_cast<std::size_t>(i)]);
    const Eigen::VectorXd act = hidden_activations(params, sigma);
    for (int j = 0; j < params.n_hidden; ++j) e -= softplus(act[j]);
    return e;
}

double unnormalized_psi(const RbmParameters& params, const std::vector<int>& sigma) {
    return std::exp(-0.5 * effective_energy(params, sigma));
}

Eigen::VectorXd conditional_hidden(const RbmParameters& params, const std::vector<int>& sigma) {
    Eigen::VectorXd act = hidden_activations(params, sigma);
    for (int j = 0; j < params.n_hidden; ++j) act[j] = sigmoid(act[j]);
    return act;
}

Eigen::MatrixXd conditional_visible(const RbmParameters& params, const Eigen::VectorXd& hidden) {
    if (hidden.size() != params.n_hidden)
        throw std::invalid_argument("conditional_visible: hidden vector has wrong size");
    Eigen::MatrixXd probs(params.n_sites, params.local_dim);
    for (int i = 0; i < params.n_sites; ++i) {
        Eigen::VectorXd logits = params.b.row(i).transpose();
        logits += params.W[static_cast<std::size_t>(i)].transpose() * hidden;
        const double top = logits.maxCoeff();
        double z = 0.0;
        for (int d = 0; d < params.local_dim; ++d) {
            const double e = std::exp(logits[d] - top);
            probs(i, d) = e;
            z += e;
        }
        probs.row(i) /= z;
    }
    return probs;
}

GibbsChainState GibbsChainState::all_zero(int n_sites, int n_hidden) {
    GibbsChainState s;
    s.visible.assign(static_cast<std::size_t>(n_sites), 0);
    s.hidden.assign(static_cast<std::size_t>(n_hidden), 0);
    return s;
}

std::vector<RotorConfiguration> gibbs_sample(const RbmParameters& params,
                                             const GibbsChainState& start, int k,
                                             std::size_t count, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("gibbs_sample: k must be at least 1");
    check_sigma(params, start.visible);
    std::vector<RotorConfiguration> out(count);

#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(count); ++c) {
        std::mt19937_64 gen(derive_seed(seed, kStreamChain, static_cast<std::uint64_t>(c)));
        std::vector<int> sigma = start.visible;
        std::vector<std::uint8_t> hidden = start.hidden;
        for (int step = 0; step < k; ++step) gibbs_step(params, sigma, hidden, gen);
        out[static_cast<std::size_t>(c)].sigma = std::move(sigma);
    }
    return out;
}

RbmParameters gradients(const RbmParameters& params,
                        const std::vector<RotorConfiguration>& positive_batch,
                        const std::vector<RotorConfiguration>& negative_batch) {
    if (positive_batch.empty() || negative_batch.empty())
        throw std::invalid_argument("gradients: batches must be non-empty");
    RbmParameters grad = zeros_like(params);
    const double wp = 1.0 / static_cast<double>(positive_batch.size());
    for (const auto& s : positive_batch) accumulate_energy_gradient(params, s.sigma, wp, grad);
    const double wn = -1.0 / static_cast<double>(negative_batch.size());
    for (const auto& s : negative_batch) accumulate_energy_gradient(params, s.sigma, wn, grad);
    return grad;
}

void TrainingConfig::validate() const {
    if (learning_rate <= 0.0) throw std::invalid_argument("TrainingConfig: learning_rate <= 0");
    if (positive_batch < 1 || negative_batch < 1 || gibbs_k < 1 || max_epochs < 1 ||
        eval_interval < 1 || eval_samples < 1 || eval_gibbs_steps < 1)
        throw std::invalid_argument("TrainingConfig: all counts must be at least 1");
    if (!(target_delta > 0.0)) throw std::invalid_argument("TrainingConfig: target_delta <= 0");
}

TrainResult train(const RbmParameters& initial, const MeasurementDataset& data,
                  const TrainingConfig& cfg, const Evaluator& evaluator) {
    cfg.validate();
    if (data.samples.empty()) throw std::invalid_argument("train: dataset is empty");
    if (data.n_sites != initial.n_sites || local_dim(data.ell_max) != initial.local_dim)
        throw std::invalid_argument("train: dataset does not match RBM shape");

    TrainResult result;
    result.params = initial;
    const auto n_data = data.samples.size();
    std::vector<std::size_t> order(n_data);
    std::iota(order.begin(), order.end(), std::size_t{0});

    const auto batch_size = static_cast<std::size_t>(cfg.positive_batch);
    std::uint64_t update_counter = 0;

    for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        std::mt19937_64 shuffle_gen(
            derive_seed(cfg.seed, kStreamShuffle, static_cast<std::uint64_t>(epoch)));
        std::shuffle(order.begin(), order.end(), shuffle_gen);

        for (std::size_t off = 0; off < n_data; off += batch_size) {
            const std::size_t end = std::min(off + batch_size, n_data);
            std::vector<RotorConfiguration> batch;
            batch.reserve(end - off);
            for (std::size_t s = off; s < end; ++s) batch.push_back(data.samples[order[s]]);

            // negative chains restart from the mini-batch samples (CD)
            std::vector<RotorConfiguration> negative(
                static_cast<std::size_t>(cfg.negative_batch));
            const std::uint64_t neg_seed = derive_seed(cfg.seed, kStreamNegative, update_counter);
#pragma omp parallel for schedule(static)
            for (std::int64_t c = 0; c < cfg.negative_batch; ++c) {
                std::mt19937_64 gen(derive_seed(neg_seed, kStreamChain,
                                                static_cast<std::uint64_t>(c)));
                std::vector<int> sigma =
                    batch[static_cast<std::size_t>(c) % batch.size()].sigma;
                std::vector<std::uint8_t> hidden(static_cast<std::size_t>(initial.n_hidden), 0);
                for (int step = 0; step < cfg.gibbs_k; ++step)
                    gibbs_step(result.params, sigma, hidden, gen);
                negative[static_cast<std::size_t>(c)].sigma = std::move(sigma);
            }

            const RbmParameters grad = gradients(result.params, batch, negative);
            for (int i = 0; i < result.params.n_sites; ++i)
                result.params.W[static_cast<std::size_t>(i)] -=
                    cfg.learning_rate * grad.W[static_cast<std::size_t>(i)];
            result.params.b -= cfg.learning_rate * grad.b;
            result.params.c -= cfg.learning_rate * grad.c;
            ++update_counter;
        }

        if (!result.params.all_finite())
            throw TrainingDivergedError(
                "train: parameters diverged at epoch " + std::to_string(epoch), result.trace);

        if (epoch % cfg.eval_interval == 0) {
            const std::uint64_t eval_seed =
                derive_seed(cfg.seed, kStreamEval, static_cast<std::uint64_t>(epoch));
            const EvalPoint point = evaluator(result.params, epoch, eval_seed);
            result.trace.push_back(TraceRow{epoch, point.delta, point.delta_stderr,
                                            point.kinetic, point.potential});
            result.epochs_used = epoch;
            if (point.delta <= cfg.target_delta) {
                result.reached = true;
                return result;
            }
        }
        result.epochs_used = epoch;
    }
    return result;
}

double exact_log_partition(const RbmParameters& params) {
    double total_dim = std::pow(static_cast<double>(params.local_dim), params.n_sites);
    if (total_dim > 1e6)
        throw std::invalid_argument("exact_log_partition: space too large to enumerate");

    std::vector<int> sigma(static_cast<std::size_t>(params.n_sites), 0);
    double top = -std::numeric_limits<double>::infinity();
    std::vector<double> neg_energies;
    neg_energies.reserve(static_cast<std::size_t>(total_dim));
    while (true) {
        const double v = -effective_energy(params, sigma);
        neg_energies.push_back(v);
        top = std::max(top, v);
        int i = params.n_sites - 1;
        while (i >= 0 && ++sigma[static_cast<std::size_t>(i)] == params.local_dim) {
            sigma[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
    }
    double acc = 0.0;
    for (double v : neg_energies) acc += std::exp(v - top);
    return top + std::log(acc);
}

double exact_partition(const RbmParameters& params) {
    return std::exp(exact_log_partition(params));
}

double exact_kl(const RbmParameters& params, const Eigen::VectorXd& q) {
    const double log_z = exact_log_partition(params);
    const double total_dim = std::pow(static_cast<double>(params.local_dim), params.n_sites);
    if (static_cast<double>(q.size()) != total_dim)
        throw std::invalid_argument("exact_kl: q length does not match the model space");

    double kl = 0.0;
    std::vector<int> sigma(static_cast<std::size_t>(params.n_sites), 0);
    Eigen::Index g = 0;
    while (true) {
        const double qg = q[g];
        if (qg > 0.0) {
            const double log_p = -effective_energy(params, sigma) - log_z;
            kl += qg * (std::log(qg) - log_p);
        }
        int i = params.n_sites - 1;
        while (i >= 0 && ++sigma[static_cast<std::size_t>(i)] == params.local_dim) {
            sigma[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++g;
    }
    return kl;
}

namespace {

constexpr char kMagic[8] = {'R', 'O', 'T', 'O', 'R', 'R', 'B', 'M'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

void save_params(const RbmParameters& params, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_params: cannot open " + path);
    out.write(kMagic, sizeof kMagic);
    auto write_u32 = [&out](std::uint32_t v) {
        out.write(reinterpret_cast<const char*>(&v), sizeof v);
    };
    write_u32(kVersion);
    write_u32(static_cast<std::uint32_t>(params.n_sites));
    write_u32(static_cast<std::uint32_t>(params.ell_max));
    write_u32(static_cast<std::uint32_t>(params.n_hidden));
    auto write_d = [&out](double v) { out.write(reinterpret_cast<const char*>(&v), sizeof v); };
    for (const auto& w : params.W)
        for (int j = 0; j < w.rows(); ++j)
            for (int d = 0; d < w.cols(); ++d) write_d(w(j, d));
    for (int i = 0; i < params.b.rows(); ++i)
        for (int d = 0; d < params.b.cols(); ++d) write_d(params.b(i, d));
    for (int j = 0; j < params.c.size(); ++j) write_d(params.c[j]);
    if (!out) throw std::runtime_error("save_params: write failed for " + path);
}

RbmParameters load_params(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_params: cannot open " + path);
    char magic[8];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw std::runtime_error("load_params: not an RBM checkpoint: " + path);
    auto read_u32 = [&in]() {
        std::uint32_t v = 0;
        in.read(reinterpret_cast<char*>(&v), sizeof v);
        return v;
    };
    const std::uint32_t version = read_u32();
    if (version != kVersion)
        throw std::runtime_error("load_params: unsupported checkpoint version " +
                                 std::to_string(version));
    RbmParameters p;
    p.n_sites = static_cast<int>(read_u32());
    p.ell_max = static_cast<int>(read_u32());
    p.n_hidden = static_cast<int>(read_u32());
    if (!in || p.n_sites < 1 || p.ell_max < 0 || p.n_hidden < 1)
        throw std::runtime_error("load_params: corrupt checkpoint header");
    p.local_dim = local_dim(p.ell_max);

    auto read_d = [&in]() {
        double v = 0.0;
        in.read(reinterpret_cast<char*>(&v), sizeof v);
        return v;
    };
    p.W.resize(static_cast<std::size_t>(p.n_sites));
    for (auto& w : p.W) {
        w.resize(p.n_hidden, p.local_dim);
        for (int j = 0; j < p.n_hidden; ++j)
            for (int d = 0; d < p.local_dim; ++d) w(j, d) = read_d();
    }
    p.b.resize(p.n_sites, p.local_dim);
    for (int i = 0; i < p.n_sites; ++i)
        for (int d = 0; d < p.local_dim; ++d) p.b(i, d) = read_d();
    p.c.resize(p.n_hidden);
    for (int j = 0; j < p.n_hidden; ++j) p.c[j] = read_d();
    if (!in) throw std::runtime_error("load_params: truncated checkpoint payload");
    char extra;
    if (in.read(&extra, 1))
        throw std::runtime_error("load_params: trailing bytes after checkpoint payload");
    return p;
}

}  // namespace rotorrec
