#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rotorrec/estimators.hpp"
#include "rotorrec/rng.hpp"
#include "rotorrec/sampling.hpp"

using namespace rotorrec;

namespace {

// an RBM whose marginal is a delta at the all-zero configuration
RbmParameters delta_rbm(int n_sites, int ell_max) {
    RbmParameters p = init_params(n_sites, ell_max, 1, 1);
    for (auto& w : p.W) w.setZero();
    for (int i = 0; i < n_sites; ++i) p.b(i, 0) = 60.0;
    return p;
}

RbmParameters uniform_rbm(int n_sites, int ell_max) {
    RbmParameters p = init_params(n_sites, ell_max, 1, 1);
    for (auto& w : p.W) w.setZero();
    return p;
}

}  // namespace

TEST_CASE("kinetic estimator basics") {
    std::vector<RotorConfiguration> zeros(10, RotorConfiguration{{0, 0}});
    const auto [zero_mean, zero_err] = kinetic_estimator(zeros);
    CHECK(zero_mean == 0.0);
    CHECK(zero_err == 0.0);

    std::vector<RotorConfiguration> one{
        RotorConfiguration{{label_encode(1, 0), label_encode(2, 1)}}};
    CHECK(kinetic_estimator(one).first == doctest::Approx(8.0).epsilon(1e-15));

    CHECK_THROWS_AS(kinetic_estimator({}), std::invalid_argument);
}

TEST_CASE("kinetic estimator agrees with the dense expectation value") {
    const HilbertSpace space(2, 2);
    const SparseHamiltonian h(space, 1.0);
    const GroundStateSolution sol = ground_state(h);
    const auto ds = sample_exact(sol, space, 1.0, 20000, 7);

    // dense <K> from the kinetic diagonal
    double k_exact = 0.0;
    for (std::uint64_t g = 0; g < space.total_dim(); ++g) {
        const double a = sol.amplitudes[static_cast<Eigen::Index>(g)];
        k_exact += a * a * h.kinetic_diagonal(g);
    }
    const auto [mean, se] = kinetic_estimator(ds.samples);
    CHECK(std::abs(mean - k_exact) < 5.0 * se);
}

TEST_CASE("potential estimator on a delta model vanishes") {
    const HilbertSpace space(2, 1);
    const SparseHamiltonian h(space, 1.0);
    const RbmParameters p = delta_rbm(2, 1);
    std::vector<RotorConfiguration> samples(50, RotorConfiguration{{0, 0}});
    const auto [mean, se] = potential_estimator(p, samples, h);
    CHECK(std::abs(mean) < 1e-10);  // the wavefunction ratios vanish
    const EnergyEstimate est = energy_rbm(p, samples, h);
    CHECK(std::abs(est.total) < 1e-10);
}

TEST_CASE("potential estimator matches full enumeration for the uniform model") {
    const HilbertSpace space(2, 1);
    const SparseHamiltonian h(space, 1.0);
    const RbmParameters p = uniform_rbm(2, 1);

    // exact <psi_u|V|psi_u> with psi_u the uniform unit vector
    const Eigen::MatrixXd dense = dense_matrix(h);
    const auto dim = static_cast<Eigen::Index>(space.total_dim());
    Eigen::MatrixXd v_only = dense;
    v_only.diagonal().setZero();  // kinetic is the only diagonal part here
    const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(dim, 1.0 / std::sqrt(16.0));
    const double v_exact = uniform.dot(v_only * uniform) / h.inv_r3();

    const GibbsChainState start = GibbsChainState::all_zero(2, 1);
    const auto samples = gibbs_sample(p, start, 3, 40000, 11);
    const auto [mean, se] = potential_estimator(p, samples, h);
    CHECK(std::abs(mean - v_exact) < 5.0 * se);
}

TEST_CASE("exhaustive weighting reproduces dense expectation values") {
    const HilbertSpace space(2, 1);
    const SparseHamiltonian h(space, 1.3);

    std::mt19937_64 gen(13);
    RbmParameters p = init_params(2, 1, 2, 13);
    for (auto& w : p.W)
        for (int j = 0; j < 2; ++j)
            for (int d = 0; d < 4; ++d) w(j, d) = 0.4 * uniform_sym(gen);
    for (int i = 0; i < 2; ++i)
        for (int d = 0; d < 4; ++d) p.b(i, d) = 0.4 * uniform_sym(gen);

    // psi_lambda from the enumerated marginal
    const oracles::RbmEnumeration ref = oracles::enumerate_rbm(p);
    const auto dim = static_cast<Eigen::Index>(space.total_dim());
    Eigen::VectorXd psi(dim);
    for (Eigen::Index g = 0; g < dim; ++g) psi[g] = std::sqrt(ref.marginal[g]);

    const Eigen::MatrixXd dense = dense_matrix(h);
    const double e_dense = psi.dot(dense * psi);

    const EnergyEstimate est = energy_rbm_exhaustive(p, h);
    CHECK(est.total == doctest::Approx(e_dense).epsilon(1e-10));

    // the pieces decompose consistently
    CHECK(est.total ==
          doctest::Approx(est.kinetic + est.potential * h.inv_r3()).epsilon(1e-12));
}

TEST_CASE("delta learning criterion") {
    CHECK(delta(1.5, 1.5, 0.7) == 0.0);
    CHECK(delta(2.2, 1.5, 0.7) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(delta(1.5 - 0.05 * 0.7, 1.5, 0.7) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK_THROWS_AS(delta(1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(delta(1.0, 1.0, -0.3), std::invalid_argument);
}

TEST_CASE("symmetry violation fraction") {
    SUBCASE("exact ground-state samples never violate") {
        const HilbertSpace space(2, 2);
        const SparseHamiltonian h(space, 1.0);
        const GroundStateSolution sol = ground_state(h);
        const auto ds = sample_exact(sol, space, 1.0, 5000, 17);
        const SymmetryPartition part = symmetry_violation_fraction(ds.samples);
        CHECK(part.fraction == 0.0);
        CHECK(part.violating.empty());
        CHECK(part.satisfying.size() == 5000);
    }
    SUBCASE("uniform samples violate at the enumerated rate") {
        const HilbertSpace space(2, 1);
        const RbmParameters p = uniform_rbm(2, 1);
        // enumerate the uniform-mass fraction outside the (0,0) sector
        int outside = 0;
        for (std::uint64_t g = 0; g < space.total_dim(); ++g) {
            const auto [m, parity] = symmetry_numbers(space.config_at(g));
            if (m != 0 || parity != 0) ++outside;
        }
        const double expected = static_cast<double>(outside) / 16.0;

        const GibbsChainState start = GibbsChainState::all_zero(2, 1);
        const std::size_t count = 40000;
        const auto samples = gibbs_sample(p, start, 2, count, 19);
        const SymmetryPartition part = symmetry_violation_fraction(samples);
        const double se = std::sqrt(expected * (1.0 - expected) / static_cast<double>(count));
        CHECK(std::abs(part.fraction - expected) < 5.0 * se);
    }
    SUBCASE("a single violating sample") {
        std::vector<RotorConfiguration> one{
            RotorConfiguration{{label_encode(1, 1), label_encode(0, 0)}}};
        CHECK(symmetry_violation_fraction(one).fraction == 1.0);
    }
    CHECK_THROWS_AS(symmetry_violation_fraction({}), std::invalid_argument);
}

TEST_CASE("contamination proxy against the dense spectrum") {
    const HilbertSpace space(2, 1);
    const SparseHamiltonian h(space, 1.0);
    const Spectrum spec = dense_spectrum(h);

    SUBCASE("pure eigenstates") {
        const auto [lhs0, c0] = contamination_proxy(spec.vectors.col(0), spec);
        CHECK(lhs0 == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(c0 == doctest::Approx(0.0).epsilon(1e-12));
        const auto [lhs1, c1] = contamination_proxy(spec.vectors.col(1), spec);
        CHECK(lhs1 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c1 == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("a two-component mixture") {
        const Eigen::VectorXd psi =
            std::sqrt(0.9) * spec.vectors.col(0) + std::sqrt(0.1) * spec.vectors.col(1);
        const auto [lhs, c1] = contamination_proxy(psi, spec);
        CHECK(lhs == doctest::Approx(0.1).epsilon(1e-10));
        CHECK(c1 == doctest::Approx(0.1).epsilon(1e-10));
    }
    SUBCASE("the proxy never underestimates the first-state weight") {
        std::mt19937_64 gen(23);
        for (int trial = 0; trial < 25; ++trial) {
            Eigen::VectorXd psi(spec.vectors.rows());
            for (Eigen::Index i = 0; i < psi.size(); ++i) psi[i] = uniform_sym(gen);
            psi.normalize();
            const auto [lhs, c1] = contamination_proxy(psi, spec);
            CHECK(lhs - c1 >= -1e-12);
        }
    }
    SUBCASE("degenerate spectra are rejected") {
        Spectrum degenerate = spec;
        degenerate.energies[1] = degenerate.energies[0];
        CHECK_THROWS_AS(contamination_proxy(spec.vectors.col(0), degenerate),
                        DegenerateGroundStateError);
    }
}

TEST_CASE("the standard evaluator reports a small delta for a good model") {
    // the delta model is the exact ground state of the decoupled chain
    const HilbertSpace space(2, 1);
    const SparseHamiltonian h(space, 1000.0);
    const GroundStateSolution sol = ground_state(h);
    const RbmParameters p = delta_rbm(2, 1);
    const Evaluator evaluator = make_energy_evaluator(h, sol, 500, 3);
    const EvalPoint point = evaluator(p, 1, 31);
    CHECK(point.delta < 0.05);
    CHECK(point.kinetic == doctest::Approx(0.0).epsilon(1e-12));
}
