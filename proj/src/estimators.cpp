#include "rotorrec/estimators.hpp"

#include <cmath>
#include <stdexcept>

namespace rotorrec {

namespace {

std::pair<double, double> mean_and_stderr(const std::vector<double>& values) {
    const auto n = values.size();
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    if (n < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double var = ss / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

double kinetic_of(const RotorConfiguration& config) {
    double k = 0.0;
    for (int s : config.sigma) {
        const int ell = label_decode(s).ell;
        k += static_cast<double>(ell * (ell + 1));
    }
    return k;
}

// Local off-diagonal estimate for one sample; V elements carry 1/|i-j|^3 but
// not 1/R^3.
double local_potential(const RbmParameters& params, const std::vector<int>& sigma,
                       const SparseHamiltonian& h) {
    const double e_ref = effective_energy(params, sigma);
    double acc = 0.0;
    std::vector<int> sigma2 = sigma;
    h.for_each_connected(sigma, [&](int i, int j, const PairTransition& t, double element) {
        sigma2[static_cast<std::size_t>(i)] = t.a2;
        sigma2[static_cast<std::size_t>(j)] = t.b2;
        const double ratio = std::exp(0.5 * (e_ref - effective_energy(params, sigma2)));
        acc += ratio * element;
        sigma2[static_cast<std::size_t>(i)] = sigma[static_cast<std::size_t>(i)];
        sigma2[static_cast<std::size_t>(j)] = sigma[static_cast<std::size_t>(j)];
    });
    return acc;
}

}  // namespace

std::pair<double, double> kinetic_estimator(const std::vector<RotorConfiguration>& samples) {
    if (samples.empty()) throw std::invalid_argument("kinetic_estimator: no samples");
    std::vector<double> values;
    values.reserve(samples.size());
    for (const auto& s : samples) values.push_back(kinetic_of(s));
    return mean_and_stderr(values);
}

std::pair<double, double> potential_estimator(const RbmParameters& params,
                                              const std::vector<RotorConfiguration>& samples,
                                              const SparseHamiltonian& h) {
    if (samples.empty()) throw std::invalid_argument("potential_estimator: no samples");
    std::vector<double> values(samples.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(samples.size()); ++i)
        values[static_cast<std::size_t>(i)] =
            local_potential(params, samples[static_cast<std::size_t>(i)].sigma, h);
    return mean_and_stderr(values);
}

EnergyEstimate energy_rbm(const RbmParameters& params,
                          const std::vector<RotorConfiguration>& samples,
                          const SparseHamiltonian& h) {
    if (samples.empty()) throw std::invalid_argument("energy_rbm: no samples");
    std::vector<double> kinetic(samples.size()), potential(samples.size()),
        local(samples.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(samples.size()); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        kinetic[idx] = kinetic_of(samples[idx]);
        potential[idx] = local_potential(params, samples[idx].sigma, h);
        local[idx] = kinetic[idx] + h.inv_r3() * potential[idx];
    }
    EnergyEstimate est;
    est.n_samples = samples.size();
    est.kinetic = mean_and_stderr(kinetic).first;
    est.potential = mean_and_stderr(potential).first;
    const auto [mean, se] = mean_and_stderr(local);
    est.total = mean;
    est.std_error = se;
    return est;
}

EnergyEstimate energy_rbm_exhaustive(const RbmParameters& params, const SparseHamiltonian& h) {
    const double total_dim = std::pow(static_cast<double>(params.local_dim), params.n_sites);
    if (total_dim > 1e6)
        throw std::invalid_argument("energy_rbm_exhaustive: space too large to enumerate");
    if (static_cast<std::uint64_t>(total_dim) != h.space().total_dim())
        throw std::invalid_argument("energy_rbm_exhaustive: RBM and Hamiltonian shapes differ");

    const double log_z = exact_log_partition(params);
    double kin = 0.0, pot = 0.0;
    std::vector<int> sigma(static_cast<std::size_t>(params.n_sites), 0);
    while (true) {
        const double p = std::exp(-effective_energy(params, sigma) - log_z);
        RotorConfiguration config;
        config.sigma = sigma;
        kin += p * kinetic_of(config);
        pot += p * local_potential(params, sigma, h);
        int i = params.n_sites - 1;
        while (i >= 0 && ++sigma[static_cast<std::size_t>(i)] == params.local_dim) {
            sigma[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
    }
    EnergyEstimate est;
    est.kinetic = kin;
    est.potential = pot;
    est.total = kin + h.inv_r3() * pot;
    est.std_error = 0.0;
    est.n_samples = static_cast<std::size_t>(total_dim);
    return est;
}

double delta(double e_rbm, double e_exact, double gap) {
    if (!(gap > 0.0)) throw std::invalid_argument("delta: gap must be positive");
    return std::abs(e_rbm - e_exact) / gap;
}

SymmetryPartition symmetry_violation_fraction(const std::vector<RotorConfiguration>& samples) {
    if (samples.empty())
        throw std::invalid_argument("symmetry_violation_fraction: no samples");
    SymmetryPartition part;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto [m, parity] = symmetry_numbers(samples[i]);
        if (m != 0 || parity != 0)
            part.violating.push_back(i);
        else
            part.satisfying.push_back(i);
    }
    part.fraction =
        static_cast<double>(part.violating.size()) / static_cast<double>(samples.size());
    return part;
}

std::pair<double, double> contamination_proxy(const Eigen::VectorXd& psi_approx,
                                              const Spectrum& spectrum) {
    if (psi_approx.size() != spectrum.vectors.rows())
        throw std::invalid_argument("contamination_proxy: dimension mismatch");
    const double gap = spectrum.energies[1] - spectrum.energies[0];
    if (gap < 1e-10)
        throw DegenerateGroundStateError("contamination_proxy: degenerate gap");
    const Eigen::VectorXd coeff = spectrum.vectors.transpose() * psi_approx;
    double e_psi = 0.0;
    for (Eigen::Index n = 0; n < coeff.size(); ++n)
        e_psi += coeff[n] * coeff[n] * spectrum.energies[n];
    const double lhs = (e_psi - spectrum.energies[0]) / gap;
    const double c1_sq = coeff[1] * coeff[1];
    return {lhs, c1_sq};
}

Evaluator make_energy_evaluator(const SparseHamiltonian& h, const GroundStateSolution& exact,
                                std::size_t eval_samples, int eval_gibbs_steps) {
    const double e_exact = exact.energy_0;
    const double gap = exact.gap;
    return [&h, e_exact, gap, eval_samples, eval_gibbs_steps](
               const RbmParameters& params, int /*epoch*/, std::uint64_t seed) -> EvalPoint {
        const GibbsChainState start = GibbsChainState::all_zero(params.n_sites, params.n_hidden);
        const auto samples = gibbs_sample(params, start, eval_gibbs_steps, eval_samples, seed);
        const EnergyEstimate est = energy_rbm(params, samples, h);
        EvalPoint point;
        point.delta = delta(est.total, e_exact, gap);
        point.delta_stderr = est.std_error / gap;
        point.kinetic = est.kinetic;
        point.potential = est.potential;
        return point;
    };
}

}  // namespace rotorrec
