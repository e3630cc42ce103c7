#include "rotorrec/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "rotorrec/rng.hpp"

namespace rotorrec {

namespace {

constexpr double kDegenerateGap = 1e-10;

void finalize(GroundStateSolution& sol) {
    if (sol.gap < kDegenerateGap)
        throw DegenerateGroundStateError("ground state is degenerate (gap " +
                                         std::to_string(sol.gap) + ")");
    sol.amplitudes.normalize();
    if (sol.amplitudes[0] < 0.0) sol.amplitudes = -sol.amplitudes;
}

// (total_m, ell_parity) per global index, enumerated in mixed-radix order.
template <typename Fn>
void for_each_sector(const HilbertSpace& space, Fn&& fn) {
    const int d = space.local_dim();
    std::vector<int> m_of(static_cast<std::size_t>(d)), l_of(static_cast<std::size_t>(d));
    for (int s = 0; s < d; ++s) {
        const RotorLabel lab = label_decode(s);
        m_of[static_cast<std::size_t>(s)] = lab.m;
        l_of[static_cast<std::size_t>(s)] = lab.ell;
    }
    const std::uint64_t dim = space.total_dim();
    for (std::uint64_t g = 0; g < dim; ++g) {
        std::uint64_t rest = g;
        int total_m = 0, total_l = 0;
        for (int i = 0; i < space.n_sites(); ++i) {
            const auto s = static_cast<std::size_t>(rest % static_cast<std::uint64_t>(d));
            total_m += m_of[s];
            total_l += l_of[s];
            rest /= static_cast<std::uint64_t>(d);
        }
        fn(g, total_m, total_l & 1);
    }
}

// H commutes with the sector projectors, so zeroing the off-sector noise of a
// converged Ritz vector is exact symmetry cleanup, not an approximation.
void project_dominant_sector(const HilbertSpace& space, Eigen::VectorXd& psi) {
    const auto [m0, p0] = dominant_sector(space, psi);
    for_each_sector(space, [&](std::uint64_t g, int m, int p) {
        if (m != m0 || p != p0) psi[static_cast<Eigen::Index>(g)] = 0.0;
    });
    psi.normalize();
}

}  // namespace

double mass_outside_sector(const HilbertSpace& space, const Eigen::VectorXd& psi, int total_m,
                           int ell_parity) {
    double mass = 0.0;
    for_each_sector(space, [&](std::uint64_t g, int m, int p) {
        if (m != total_m || p != ell_parity) {
            const double a = psi[static_cast<Eigen::Index>(g)];
            mass += a * a;
        }
    });
    return mass;
}

std::pair<int, int> dominant_sector(const HilbertSpace& space, const Eigen::VectorXd& psi) {
    std::map<std::pair<int, int>, double> weights;
    for_each_sector(space, [&](std::uint64_t g, int m, int p) {
        const double a = psi[static_cast<Eigen::Index>(g)];
        weights[{m, p}] += a * a;
    });
    auto best = weights.begin();
    for (auto it = weights.begin(); it != weights.end(); ++it)
        if (it->second > best->second) best = it;
    return best->first;
}

GroundStateSolution ground_state_dense(const SparseHamiltonian& h) {
    if (h.space().total_dim() < 2)
        throw std::invalid_argument("ground_state: space too small to define a gap");
    const Eigen::MatrixXd mat = dense_matrix(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mat);
    if (solver.info() != Eigen::Success)
        throw SolverError("dense eigensolver failed", std::numeric_limits<double>::quiet_NaN());

    GroundStateSolution sol;
    sol.energy_0 = solver.eigenvalues()[0];
    sol.energy_1 = solver.eigenvalues()[1];
    sol.gap = sol.energy_1 - sol.energy_0;
    sol.amplitudes = solver.eigenvectors().col(0);
    sol.method = SolveMethod::dense;
    sol.residual = (h.apply(sol.amplitudes) - sol.energy_0 * sol.amplitudes).norm();
    finalize(sol);
    return sol;
}

// Thick-restart Lanczos for the two lowest eigenpairs. The basis is kept
// explicitly and every new direction is orthogonalized against all of it
// (twice), so the projected matrix stays valid across restarts where it is
// arrowhead rather than tridiagonal.
GroundStateSolution ground_state_lanczos(const SparseHamiltonian& h, double tol, int max_iter,
                                         std::uint64_t seed, int max_basis) {
    if (!(tol > 0.0)) throw std::invalid_argument("ground_state_lanczos: tol must be positive");
    const auto dim = static_cast<Eigen::Index>(h.space().total_dim());
    const int nev = 2;
    const int m = static_cast<int>(std::min<Eigen::Index>(max_basis, dim));
    const int keep = std::min(m - 2, nev + 6);

    std::mt19937_64 gen(mix_seed(seed));
    Eigen::VectorXd v0(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v0[i] = uniform_sym(gen);
    v0.normalize();

    Eigen::MatrixXd basis(dim, m);
    Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(m, m);
    basis.col(0) = v0;
    int nb = 1;          // current basis size
    int matvecs = 0;
    double beta_last = 0.0;       // norm of the residual direction feeding column nb
    double best_residual = std::numeric_limits<double>::infinity();

    Eigen::VectorXd ritz_vals;
    Eigen::MatrixXd ritz_vecs;

    while (true) {
        // expand until the basis is full
        while (nb < m) {
            Eigen::VectorXd w = h.apply(basis.col(nb - 1));
            ++matvecs;
            Eigen::VectorXd coeff = basis.leftCols(nb).transpose() * w;
            w.noalias() -= basis.leftCols(nb) * coeff;
            // second pass keeps orthogonality at machine precision
            Eigen::VectorXd coeff2 = basis.leftCols(nb).transpose() * w;
            w.noalias() -= basis.leftCols(nb) * coeff2;
            coeff += coeff2;
            for (int i = 0; i < nb; ++i) {
                proj(i, nb - 1) = coeff[i];
                proj(nb - 1, i) = coeff[i];
            }
            beta_last = w.norm();
            if (beta_last < 1e-14) {
                // invariant subspace; restart the residual direction randomly
                for (Eigen::Index i = 0; i < dim; ++i) w[i] = uniform_sym(gen);
                Eigen::VectorXd c = basis.leftCols(nb).transpose() * w;
                w.noalias() -= basis.leftCols(nb) * c;
                c = basis.leftCols(nb).transpose() * w;
                w.noalias() -= basis.leftCols(nb) * c;
                beta_last = w.norm();
            }
            basis.col(nb) = w / beta_last;
            ++nb;
            if (matvecs >= max_iter) break;
        }

        // Rayleigh-Ritz on the filled block (nb - 1 completed columns)
        const int k = nb - 1;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(proj.topLeftCorner(k, k));
        ritz_vals = small.eigenvalues();
        ritz_vecs = small.eigenvectors();

        // residual estimate |beta * s_k| for the two lowest Ritz pairs
        double rmax = 0.0;
        for (int p = 0; p < std::min(nev, k); ++p)
            rmax = std::max(rmax, std::abs(beta_last * ritz_vecs(k - 1, p)));
        best_residual = std::min(best_residual, rmax);

        if ((rmax <= tol && k >= nev) || matvecs >= max_iter) {
            if (rmax > tol)
                throw SolverError("Lanczos failed to converge within " +
                                      std::to_string(max_iter) + " matvecs (residual " +
                                      std::to_string(best_residual) + ")",
                                  best_residual);
            break;
        }

        // thick restart: keep the lowest Ritz vectors plus the residual direction
        Eigen::MatrixXd kept = basis.leftCols(k) * ritz_vecs.leftCols(keep);
        basis.leftCols(keep) = kept;
        basis.col(keep) = basis.col(nb - 1);
        proj.setZero();
        for (int p = 0; p < keep; ++p) {
            proj(p, p) = ritz_vals[p];
            proj(p, keep) = beta_last * ritz_vecs(k - 1, p);
            proj(keep, p) = proj(p, keep);
        }
        nb = keep + 1;
    }

    GroundStateSolution sol;
    sol.energy_0 = ritz_vals[0];
    sol.energy_1 = ritz_vals[1];
    sol.gap = sol.energy_1 - sol.energy_0;
    sol.amplitudes = basis.leftCols(nb - 1) * ritz_vecs.col(0);
    sol.method = SolveMethod::lanczos;
    sol.amplitudes.normalize();
    project_dominant_sector(h.space(), sol.amplitudes);
    sol.residual = (h.apply(sol.amplitudes) - sol.energy_0 * sol.amplitudes).norm();
    finalize(sol);
    return sol;
}

GroundStateSolution ground_state(const SparseHamiltonian& h, double tol, int max_iter,
                                 std::uint64_t seed) {
    if (!(tol > 0.0)) throw std::invalid_argument("ground_state: tol must be positive");
    if (h.space().total_dim() <= 4096) return ground_state_dense(h);
    return ground_state_lanczos(h, tol, max_iter, seed);
}

double amplitude_ratio(const GroundStateSolution& solution) {
    const double p0 = solution.amplitudes[0] * solution.amplitudes[0];
    double tail = 0.0;
    for (Eigen::Index i = 1; i < solution.amplitudes.size(); ++i)
        tail += solution.amplitudes[i] * solution.amplitudes[i];
    if (tail < 1e-300) return std::numeric_limits<double>::infinity();
    return p0 / tail;
}

Spectrum dense_spectrum(const SparseHamiltonian& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_matrix(h));
    if (solver.info() != Eigen::Success)
        throw SolverError("dense eigensolver failed", std::numeric_limits<double>::quiet_NaN());
    return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace rotorrec
