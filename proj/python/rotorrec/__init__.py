"""Reconstruction toolkit for dipolar rotor chain ground states.

The heavy lifting lives in the compiled ``_core`` extension: exact
diagonalization of the truncated rotor Hamiltonian, sign-structure
diagnostics, exact sampling, multinomial RBM training, and Monte Carlo
energy estimators.
"""

from ._core import (  # noqa: F401
    ConvergenceRow,
    EnergyEstimate,
    EvalPoint,
    GibbsChainState,
    GroundStateSolution,
    HilbertSpace,
    MeasurementDataset,
    RbmParameters,
    RotorLabel,
    SignPartition,
    SingleRotorOperators,
    SolveMethod,
    SparseHamiltonian,
    Spectrum,
    StoquasticityReport,
    TraceRow,
    TrainResult,
    TrainingConfig,
    __version__,
    amplitude_ratio,
    build_single_rotor_ops,
    conditional_hidden,
    conditional_visible,
    contamination_proxy,
    convergence_scan,
    delta,
    dense_spectrum,
    effective_energy,
    energy_rbm,
    energy_rbm_exhaustive,
    exact_kl,
    exact_log_partition,
    exact_partition,
    gibbs_sample,
    gradients,
    ground_state,
    init_params,
    kinetic_estimator,
    label_decode,
    label_encode,
    load_params,
    local_dim,
    mass_outside_sector,
    one_hot,
    partition_signs,
    potential_estimator,
    read_dataset,
    rectify,
    sample_exact,
    save_params,
    stoquasticity_check,
    symmetry_numbers,
    symmetry_violation_fraction,
    train,
    train_with_evaluator,
    unnormalized_psi,
    write_dataset,
    epsilon_energy,
    epsilon_general,
)

__all__ = [name for name in dir() if not name.startswith("_")]
