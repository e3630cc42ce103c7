#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "rotorrec/basis.hpp"

namespace rotorrec {

// Matrices of the rotor-axis unit-vector components in the truncated |l m>
// basis. z couples (l, m) <-> (l+-1, m); p_plus = x + i y couples
// (l, m) -> (l+-1, m+1). All entries are real, so p_minus = p_plus^T and the
// pair coupling (x_i x_j + y_i y_j) = (p_i^+ p_j^- + p_i^- p_j^+) / 2 keeps
// the full Hamiltonian real.
struct SingleRotorOperators {
    Eigen::MatrixXd z_mat;
    Eigen::MatrixXd p_plus;
    Eigen::MatrixXd p_minus;
};

// Closed-form dipole selection-rule matrix elements (Condon-Shortley phases):
//   <l+1, m | z | l, m>      =  sqrt(((l+1)^2 - m^2) / ((2l+1)(2l+3)))
//   <l+1, m+1 | p+ | l, m>   = -sqrt((l+m+1)(l+m+2) / ((2l+1)(2l+3)))
//   <l-1, m+1 | p+ | l, m>   =  sqrt((l-m)(l-m-1) / ((2l-1)(2l+1)))
SingleRotorOperators build_single_rotor_ops(int ell_max);

// One nonzero element of the two-site coupling
//   (p_i^+ p_j^- + p_i^- p_j^+) / 2 - 2 z_i z_j
// acting on local labels (a, b) -> (a2, b2). Values exclude both 1/R^3 and
// the 1/|i-j|^3 pair factor.
struct PairTransition {
    int a2;
    int b2;
    double value;
};

// Dimensionless chain Hamiltonian H/B = K + V / R^3 of an equally spaced open
// chain with all i<j pairs coupled as V_ij = (x x + y y - 2 z z) / |i-j|^3.
// Never materialized; rows are enumerated on demand from per-pair transition
// tables.
class SparseHamiltonian {
public:
    SparseHamiltonian(HilbertSpace space, double R);

    const HilbertSpace& space() const { return space_; }
    double separation() const { return R_; }
    double inv_r3() const { return inv_r3_; }
    const SingleRotorOperators& ops() const { return ops_; }

    // Sum_i l_i (l_i + 1) for the configuration at a global index.
    double kinetic_diagonal(std::uint64_t index) const;

    // y = H v, matrix-free. Gathers into each output entry with a fixed
    // summation order, so results are bitwise reproducible for any number of
    // OpenMP workers.
    Eigen::VectorXd apply(const Eigen::VectorXd& v) const;

    // All sigma' with <sigma|V|sigma'> != 0 plus the matrix element including
    // the 1/|i-j|^3 factor but excluding the global 1/R^3.
    std::vector<std::pair<RotorConfiguration, double>> connected_configs(
        const RotorConfiguration& config) const;

    // Local potential row sum_{sigma'} w(sigma') V_{sigma sigma'} for a caller
    // supplied weight; used by the Monte Carlo estimators. The callback
    // receives the connected configuration and the V element (with 1/|i-j|^3,
    // without 1/R^3).
    template <typename Fn>
    void for_each_connected(const std::vector<int>& sigma, Fn&& fn) const;

private:
    HilbertSpace space_;
    double R_;
    double inv_r3_;
    SingleRotorOperators ops_;
    // transitions_[a * D + b] lists the coupled local label pairs of (a, b)
    std::vector<std::vector<PairTransition>> transitions_;
    std::vector<double> kinetic_per_label_;  // l(l+1) per local label
    std::vector<double> pair_weights_;       // 1/|i-j|^3 per site distance

    void build_transition_table();
};

template <typename Fn>
void SparseHamiltonian::for_each_connected(const std::vector<int>& sigma, Fn&& fn) const {
    const int n = space_.n_sites();
    const int d = space_.local_dim();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double w = pair_weights_[static_cast<std::size_t>(j - i)];
            const auto& list =
                transitions_[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)] * d +
                                                      sigma[static_cast<std::size_t>(j)])];
            for (const PairTransition& t : list) fn(i, j, t, w * t.value);
        }
    }
}

// Dense realization for small spaces; test oracle and stoquasticity scans.
Eigen::MatrixXd dense_matrix(const SparseHamiltonian& h);

}  // namespace rotorrec
