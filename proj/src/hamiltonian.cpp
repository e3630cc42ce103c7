#include "rotorrec/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rotorrec {

SingleRotorOperators build_single_rotor_ops(int ell_max) {
    const int d = local_dim(ell_max);
    SingleRotorOperators ops;
    ops.z_mat = Eigen::MatrixXd::Zero(d, d);
    ops.p_plus = Eigen::MatrixXd::Zero(d, d);

    for (int ell = 0; ell <= ell_max; ++ell) {
        for (int m = -ell; m <= ell; ++m) {
            const int col = label_encode(ell, m);
            if (ell + 1 <= ell_max) {
                // <l+1, m | z | l, m>
                const double a = std::sqrt(
                    static_cast<double>((ell + 1) * (ell + 1) - m * m) /
                    static_cast<double>((2 * ell + 1) * (2 * ell + 3)));
                const int row = label_encode(ell + 1, m);
                ops.z_mat(row, col) = a;
                ops.z_mat(col, row) = a;

                // <l+1, m+1 | p+ | l, m>
                const double up = -std::sqrt(
                    static_cast<double>((ell + m + 1) * (ell + m + 2)) /
                    static_cast<double>((2 * ell + 1) * (2 * ell + 3)));
                ops.p_plus(label_encode(ell + 1, m + 1), col) = up;
            }
            if (ell >= 1 && m + 1 <= ell - 1) {
                // <l-1, m+1 | p+ | l, m>
                const double down = std::sqrt(
                    static_cast<double>((ell - m) * (ell - m - 1)) /
                    static_cast<double>((2 * ell - 1) * (2 * ell + 1)));
                ops.p_plus(label_encode(ell - 1, m + 1), col) = down;
            }
        }
    }
    ops.p_minus = ops.p_plus.transpose();
    return ops;
}

SparseHamiltonian::SparseHamiltonian(HilbertSpace space, double R)
    : space_(std::move(space)), R_(R) {
    if (!(R > 0.0)) throw std::invalid_argument("SparseHamiltonian: R must be positive");
    if (space_.n_sites() > 64)
        throw std::invalid_argument("SparseHamiltonian: more than 64 sites unsupported");
    inv_r3_ = 1.0 / (R * R * R);  // R = inf is a valid kinetic-only sentinel
    ops_ = build_single_rotor_ops(space_.ell_max());

    const int d = space_.local_dim();
    kinetic_per_label_.resize(static_cast<std::size_t>(d));
    for (int s = 0; s < d; ++s) {
        const int ell = label_decode(s).ell;
        kinetic_per_label_[static_cast<std::size_t>(s)] = static_cast<double>(ell * (ell + 1));
    }

    pair_weights_.resize(static_cast<std::size_t>(space_.n_sites()));
    for (int dist = 1; dist < space_.n_sites(); ++dist)
        pair_weights_[static_cast<std::size_t>(dist)] =
            1.0 / (static_cast<double>(dist) * dist * dist);

    build_transition_table();
}

void SparseHamiltonian::build_transition_table() {
    const int d = space_.local_dim();
    transitions_.assign(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), {});

    // Enumeration order is fixed here once; apply() inherits it, which pins
    // the floating-point summation order of every output entry.
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            auto& list = transitions_[static_cast<std::size_t>(a * d + b)];
            for (int a2 = 0; a2 < d; ++a2) {
                for (int b2 = 0; b2 < d; ++b2) {
                    const double zz = ops_.z_mat(a2, a) * ops_.z_mat(b2, b);
                    const double pp = 0.5 * (ops_.p_plus(a2, a) * ops_.p_minus(b2, b) +
                                             ops_.p_minus(a2, a) * ops_.p_plus(b2, b));
                    const double v = pp - 2.0 * zz;
                    if (v != 0.0) list.push_back(PairTransition{a2, b2, v});
                }
            }
        }
    }
}

double SparseHamiltonian::kinetic_diagonal(std::uint64_t index) const {
    const auto d = static_cast<std::uint64_t>(space_.local_dim());
    double k = 0.0;
    for (int i = 0; i < space_.n_sites(); ++i) {
        k += kinetic_per_label_[static_cast<std::size_t>(index % d)];
        index /= d;
    }
    return k;
}

Eigen::VectorXd SparseHamiltonian::apply(const Eigen::VectorXd& v) const {
    const std::uint64_t dim = space_.total_dim();
    if (static_cast<std::uint64_t>(v.size()) != dim)
        throw std::invalid_argument("apply: vector length does not match total dimension");

    Eigen::VectorXd y(v.size());
    const int n = space_.n_sites();
    const int d = space_.local_dim();
    const auto i64 = [](std::uint64_t x) { return static_cast<Eigen::Index>(x); };

#pragma omp parallel for schedule(static)
    for (std::int64_t g = 0; g < static_cast<std::int64_t>(dim); ++g) {
        const auto gu = static_cast<std::uint64_t>(g);
        // decode digits once per row
        int sigma[64];
        std::uint64_t rest = gu;
        double kin = 0.0;
        for (int i = n - 1; i >= 0; --i) {
            const int s = static_cast<int>(rest % static_cast<std::uint64_t>(d));
            sigma[i] = s;
            kin += kinetic_per_label_[static_cast<std::size_t>(s)];
            rest /= static_cast<std::uint64_t>(d);
        }
        double acc = kin * v[i64(gu)];
        double pot = 0.0;
        for (int i = 0; i < n; ++i) {
            const auto stride_i = static_cast<std::int64_t>(space_.stride(i));
            for (int j = i + 1; j < n; ++j) {
                const auto stride_j = static_cast<std::int64_t>(space_.stride(j));
                const double w = pair_weights_[static_cast<std::size_t>(j - i)];
                const auto& list = transitions_[static_cast<std::size_t>(sigma[i] * d + sigma[j])];
                for (const PairTransition& t : list) {
                    const std::int64_t g2 =
                        g + (t.a2 - sigma[i]) * stride_i + (t.b2 - sigma[j]) * stride_j;
                    pot += w * t.value * v[static_cast<Eigen::Index>(g2)];
                }
            }
        }
        y[i64(gu)] = acc + inv_r3_ * pot;
    }
    return y;
}

std::vector<std::pair<RotorConfiguration, double>> SparseHamiltonian::connected_configs(
    const RotorConfiguration& config) const {
    if (config.n_sites() != space_.n_sites())
        throw std::invalid_argument("connected_configs: site count mismatch");
    std::vector<std::pair<RotorConfiguration, double>> out;
    for_each_connected(config.sigma, [&](int i, int j, const PairTransition& t, double element) {
        RotorConfiguration c2 = config;
        c2.sigma[static_cast<std::size_t>(i)] = t.a2;
        c2.sigma[static_cast<std::size_t>(j)] = t.b2;
        out.emplace_back(std::move(c2), element);
    });
    return out;
}

Eigen::MatrixXd dense_matrix(const SparseHamiltonian& h) {
    const std::uint64_t dim = h.space().total_dim();
    if (dim > (1u << 17))
        throw std::invalid_argument("dense_matrix: space too large to materialize");
    const auto n = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index g = 0; g < n; ++g) {
        mat(g, g) = h.kinetic_diagonal(static_cast<std::uint64_t>(g));
        const RotorConfiguration config = h.space().config_at(static_cast<std::uint64_t>(g));
        for (const auto& [c2, element] : h.connected_configs(config)) {
            const auto g2 = static_cast<Eigen::Index>(h.space().config_index(c2));
            mat(g, g2) += h.inv_r3() * element;
        }
    }
    return mat;
}

}  // namespace rotorrec
