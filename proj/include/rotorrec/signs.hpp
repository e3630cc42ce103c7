#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "rotorrec/eigensolver.hpp"
#include "rotorrec/hamiltonian.hpp"

namespace rotorrec {

// Partition of the basis by coefficient sign relative to a reference state
// |n*>. Coefficients that are exactly zero count as positive.
struct SignPartition {
    Eigen::Index reference_index = 0;
    std::vector<bool> negative_mask;
    double tau_minus = 0.0;
    double tau_plus = 0.0;
};

// Throws std::invalid_argument when psi(reference) == 0; the reference is
// arbitrary, so callers pick another one.
SignPartition partition_signs(const Eigen::VectorXd& psi, Eigen::Index reference);

// |psi(n)| carrying the global sign of psi(n*); all entries non-negative
// after the conventional global-phase choice, unit norm by construction.
Eigen::VectorXd rectify(const Eigen::VectorXd& psi, const SignPartition& partition);

// <psi_rect|A|psi_rect> - <psi|A|psi> for a real symmetric operator given as
// a matvec callback.
using ApplyFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
double epsilon_general(const Eigen::VectorXd& psi, const ApplyFn& apply_a,
                       const SignPartition& partition);
double epsilon_general(const Eigen::VectorXd& psi, const Eigen::MatrixXd& a,
                       const SignPartition& partition);

// Equivalent Hermitian form -4 Re <psi| P+ A P- |psi>; used to cross-check
// epsilon_general.
double epsilon_projector_form(const Eigen::VectorXd& psi, const ApplyFn& apply_a,
                              const SignPartition& partition);

// Eigenstate closed form eps = -4 E tau- + 4 <psi| P- H P- |psi>. Requires
// solution.residual <= 1e-8.
double epsilon_energy(const GroundStateSolution& solution, const SparseHamiltonian& h,
                      const SignPartition& partition);

struct ConvergenceRow {
    int ell_max = 0;
    double tau_minus = 0.0;
    double epsilon = 0.0;
    double gap = 0.0;
    double epsilon_over_gap = 0.0;
};

// Solves the chain at each truncation level and reports the rectification
// error measures. Row order follows ell_max_list.
std::vector<ConvergenceRow> convergence_scan(int n_sites, double R,
                                             const std::vector<int>& ell_max_list,
                                             double tol = 1e-10, int max_iter = 5000,
                                             std::uint64_t seed = 20250617);

struct StoquasticityReport {
    bool is_stoquastic = false;
    double max_positive_offdiag = 0.0;
};

// Scans every off-diagonal element (including the 1/R^3 factor); stoquastic
// means none exceeds 1e-14.
StoquasticityReport stoquasticity_check(const SparseHamiltonian& h);

}  // namespace rotorrec
