#include "rotorrec/signs.hpp"

#include <cmath>
#include <stdexcept>

namespace rotorrec {

SignPartition partition_signs(const Eigen::VectorXd& psi, Eigen::Index reference) {
    if (reference < 0 || reference >= psi.size())
        throw std::invalid_argument("partition_signs: reference index out of range");
    const double ref = psi[reference];
    if (ref == 0.0)
        throw std::invalid_argument(
            "partition_signs: psi vanishes on the reference state; choose another reference");

    SignPartition part;
    part.reference_index = reference;
    part.negative_mask.assign(static_cast<std::size_t>(psi.size()), false);
    double tau_minus = 0.0, tau_plus = 0.0;
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
        const double a = psi[i];
        if (a * ref < 0.0) {
            part.negative_mask[static_cast<std::size_t>(i)] = true;
            tau_minus += a * a;
        } else {
            tau_plus += a * a;
        }
    }
    part.tau_minus = tau_minus;
    part.tau_plus = tau_plus;
    return part;
}

Eigen::VectorXd rectify(const Eigen::VectorXd& psi, const SignPartition& partition) {
    if (static_cast<std::size_t>(psi.size()) != partition.negative_mask.size())
        throw std::invalid_argument("rectify: partition does not match psi");
    const double global = psi[partition.reference_index] < 0.0 ? -1.0 : 1.0;
    Eigen::VectorXd out(psi.size());
    for (Eigen::Index i = 0; i < psi.size(); ++i) out[i] = global * std::abs(psi[i]);
    return out;
}

namespace {

Eigen::VectorXd masked(const Eigen::VectorXd& psi, const SignPartition& part, bool negative) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(psi.size());
    for (Eigen::Index i = 0; i < psi.size(); ++i)
        if (part.negative_mask[static_cast<std::size_t>(i)] == negative) out[i] = psi[i];
    return out;
}

}  // namespace

double epsilon_general(const Eigen::VectorXd& psi, const ApplyFn& apply_a,
                       const SignPartition& partition) {
    const Eigen::VectorXd rect = rectify(psi, partition);
    return rect.dot(apply_a(rect)) - psi.dot(apply_a(psi));
}

double epsilon_general(const Eigen::VectorXd& psi, const Eigen::MatrixXd& a,
                       const SignPartition& partition) {
    return epsilon_general(
        psi, [&a](const Eigen::VectorXd& v) -> Eigen::VectorXd { return a * v; }, partition);
}

double epsilon_projector_form(const Eigen::VectorXd& psi, const ApplyFn& apply_a,
                              const SignPartition& partition) {
    const Eigen::VectorXd plus = masked(psi, partition, false);
    const Eigen::VectorXd minus = masked(psi, partition, true);
    return -4.0 * plus.dot(apply_a(minus));
}

double epsilon_energy(const GroundStateSolution& solution, const SparseHamiltonian& h,
                      const SignPartition& partition) {
    if (solution.residual > 1e-8)
        throw std::invalid_argument("epsilon_energy: solution residual too large (" +
                                    std::to_string(solution.residual) + ")");
    const Eigen::VectorXd minus = masked(solution.amplitudes, partition, true);
    const double p_h_p = minus.dot(h.apply(minus));
    return -4.0 * solution.energy_0 * partition.tau_minus + 4.0 * p_h_p;
}

std::vector<ConvergenceRow> convergence_scan(int n_sites, double R,
                                             const std::vector<int>& ell_max_list, double tol,
                                             int max_iter, std::uint64_t seed) {
    std::vector<ConvergenceRow> rows;
    rows.reserve(ell_max_list.size());
    for (int ell_max : ell_max_list) {
        const HilbertSpace space(n_sites, ell_max);
        const SparseHamiltonian h(space, R);
        const GroundStateSolution sol = ground_state(h, tol, max_iter, seed);
        const SignPartition part = partition_signs(sol.amplitudes, 0);
        const double eps = epsilon_energy(sol, h, part);
        rows.push_back(
            ConvergenceRow{ell_max, part.tau_minus, eps, sol.gap, eps / sol.gap});
    }
    return rows;
}

StoquasticityReport stoquasticity_check(const SparseHamiltonian& h) {
    const std::uint64_t dim = h.space().total_dim();
    if (dim > (1u << 22))
        throw std::invalid_argument("stoquasticity_check: space too large for row enumeration");

    StoquasticityReport report;
    report.is_stoquastic = true;
    report.max_positive_offdiag = 0.0;
    for (std::uint64_t g = 0; g < dim; ++g) {
        const RotorConfiguration config = h.space().config_at(g);
        for (const auto& [c2, element] : h.connected_configs(config)) {
            const double value = h.inv_r3() * element;
            if (value > 1e-14) report.is_stoquastic = false;
            if (value > report.max_positive_offdiag) report.max_positive_offdiag = value;
        }
    }
    return report;
}

}  // namespace rotorrec
