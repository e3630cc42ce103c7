#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rotorrec/eigensolver.hpp"
#include "rotorrec/hamiltonian.hpp"
#include "rotorrec/rbm.hpp"

namespace rotorrec {

// Monte Carlo energy estimate over a set of model samples. `potential` is
// <V> without the 1/R^3 factor; total = kinetic + potential / R^3 with the
// division applied exactly once.
struct EnergyEstimate {
    double kinetic = 0.0;
    double potential = 0.0;
    double total = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
};

// Diagonal estimator: mean and standard error of sum_i l_i (l_i + 1).
std::pair<double, double> kinetic_estimator(const std::vector<RotorConfiguration>& samples);

// Off-diagonal estimator: for each sample accumulates
//   sum_{sigma'} psi~(sigma') / psi~(sigma) V_{sigma sigma'}
// over the connected configurations only, with the wavefunction ratio
// evaluated as exp((E(sigma) - E(sigma')) / 2) so the partition function
// never enters. Returns <V> without the 1/R^3 factor.
std::pair<double, double> potential_estimator(const RbmParameters& params,
                                              const std::vector<RotorConfiguration>& samples,
                                              const SparseHamiltonian& h);

// Combined estimate; per-sample local energies drive the error bar.
EnergyEstimate energy_rbm(const RbmParameters& params,
                          const std::vector<RotorConfiguration>& samples,
                          const SparseHamiltonian& h);

// Exhaustive-weighting mode: every configuration weighted by p_lambda; equals
// <psi_lambda|H|psi_lambda> exactly. Validation-only (tiny spaces).
EnergyEstimate energy_rbm_exhaustive(const RbmParameters& params, const SparseHamiltonian& h);

// |E_rbm - E_exact| / gap; the learning criterion compares this to 0.05.
double delta(double e_rbm, double e_exact, double gap);

// Samples split by the (total_m = 0, ell_parity = 0) conservation laws.
struct SymmetryPartition {
    double fraction = 0.0;  // f_NS
    std::vector<std::size_t> satisfying;
    std::vector<std::size_t> violating;
};

SymmetryPartition symmetry_violation_fraction(const std::vector<RotorConfiguration>& samples);

// Excited-state contamination proxy: lhs = (E_psi - E0) / dE1 and
// c1_sq = |<1|psi>|^2; lhs - c1_sq >= 0 up to roundoff.
std::pair<double, double> contamination_proxy(const Eigen::VectorXd& psi_approx,
                                              const Spectrum& spectrum);

// Standard training evaluator: gibbs-samples the model from the all-zero
// configuration and reports delta against the exact solution.
Evaluator make_energy_evaluator(const SparseHamiltonian& h, const GroundStateSolution& exact,
                                std::size_t eval_samples, int eval_gibbs_steps);

}  // namespace rotorrec
