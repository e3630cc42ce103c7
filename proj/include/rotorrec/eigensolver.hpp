#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "rotorrec/hamiltonian.hpp"

namespace rotorrec {

enum class SolveMethod { dense, lanczos };

// Ground state of a SparseHamiltonian: two lowest eigenvalues (counting
// multiplicity), the normalized ground eigenvector with the sign of the
// |0 0, ..., 0 0> amplitude fixed non-negative, and the achieved residual
// ||H psi - E0 psi||.
struct GroundStateSolution {
    double energy_0 = 0.0;
    double energy_1 = 0.0;
    double gap = 0.0;
    Eigen::VectorXd amplitudes;
    SolveMethod method = SolveMethod::dense;
    double residual = 0.0;
};

// Thrown when the iterative solver fails to converge; carries the best
// residual reached so callers can report it.
struct SolverError : std::runtime_error {
    SolverError(const std::string& msg, double best_residual)
        : std::runtime_error(msg), residual(best_residual) {}
    double residual;
};

struct DegenerateGroundStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense path for total_dim <= 4096, thick-restart Lanczos with full
// reorthogonalization above. The Lanczos start vector comes from a seeded
// generator so solves are reproducible.
GroundStateSolution ground_state(const SparseHamiltonian& h, double tol = 1e-10,
                                 int max_iter = 5000, std::uint64_t seed = 20250617);

GroundStateSolution ground_state_dense(const SparseHamiltonian& h);
GroundStateSolution ground_state_lanczos(const SparseHamiltonian& h, double tol = 1e-10,
                                         int max_iter = 5000, std::uint64_t seed = 20250617,
                                         int max_basis = 48);

// |psi(0)|^2 / sum_{i != 0} |psi(i)|^2 with index 0 the free-rotor ground
// state. Returns +inf when the tail mass underflows (exact product state).
double amplitude_ratio(const GroundStateSolution& solution);

// Squared amplitude carried by basis states outside the (total_m, ell_parity)
// sector.
double mass_outside_sector(const HilbertSpace& space, const Eigen::VectorXd& psi, int total_m,
                           int ell_parity);

// Sector holding the largest squared amplitude of psi.
std::pair<int, int> dominant_sector(const HilbertSpace& space, const Eigen::VectorXd& psi);

// Full spectrum of a tiny space; feeds the excited-state contamination proxy.
struct Spectrum {
    Eigen::VectorXd energies;   // ascending
    Eigen::MatrixXd vectors;    // column n is the eigenvector of energies[n]
};

Spectrum dense_spectrum(const SparseHamiltonian& h);

}  // namespace rotorrec
