#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rotorrec/basis.hpp"
#include "rotorrec/eigensolver.hpp"
#include "rotorrec/estimators.hpp"
#include "rotorrec/hamiltonian.hpp"
#include "rotorrec/rbm.hpp"
#include "rotorrec/sampling.hpp"
#include "rotorrec/signs.hpp"

namespace py = pybind11;
using namespace rotorrec;

namespace {

// samples cross the boundary as (count x N) integer arrays
py::array_t<int> configs_to_array(const std::vector<RotorConfiguration>& samples) {
    const auto rows = static_cast<py::ssize_t>(samples.size());
    const py::ssize_t cols = samples.empty() ? 0 : samples.front().n_sites();
    py::array_t<int> out({rows, cols});
    auto view = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < rows; ++i)
        for (py::ssize_t j = 0; j < cols; ++j)
            view(i, j) = samples[static_cast<std::size_t>(i)].sigma[static_cast<std::size_t>(j)];
    return out;
}

std::vector<RotorConfiguration> array_to_configs(const py::array_t<int>& array) {
    const auto view = array.unchecked<2>();
    std::vector<RotorConfiguration> out(static_cast<std::size_t>(view.shape(0)));
    for (py::ssize_t i = 0; i < view.shape(0); ++i) {
        auto& c = out[static_cast<std::size_t>(i)];
        c.sigma.resize(static_cast<std::size_t>(view.shape(1)));
        for (py::ssize_t j = 0; j < view.shape(1); ++j)
            c.sigma[static_cast<std::size_t>(j)] = view(i, j);
    }
    return out;
}

RotorConfiguration list_to_config(const std::vector<int>& sigma) {
    return RotorConfiguration{sigma};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "dipolar rotor chain ground-state reconstruction toolkit";

    // ---- basis ----
    py::class_<RotorLabel>(m, "RotorLabel")
        .def_readonly("ell", &RotorLabel::ell)
        .def_readonly("m", &RotorLabel::m)
        .def_readonly("sigma", &RotorLabel::sigma)
        .def("__repr__", [](const RotorLabel& lab) {
            return "RotorLabel(ell=" + std::to_string(lab.ell) + ", m=" + std::to_string(lab.m) +
                   ", sigma=" + std::to_string(lab.sigma) + ")";
        });

    m.def("label_encode", &label_encode, py::arg("ell"), py::arg("m"));
    m.def("label_decode", &label_decode, py::arg("sigma"));
    m.def("local_dim", &local_dim, py::arg("ell_max"));
    m.def(
        "symmetry_numbers",
        [](const std::vector<int>& sigma) { return symmetry_numbers(list_to_config(sigma)); },
        py::arg("sigma"));
    m.def(
        "one_hot",
        [](const std::vector<int>& sigma, int d) { return one_hot(list_to_config(sigma), d); },
        py::arg("sigma"), py::arg("local_dim"));

    py::class_<HilbertSpace>(m, "HilbertSpace")
        .def(py::init<int, int>(), py::arg("n_sites"), py::arg("ell_max"))
        .def_property_readonly("n_sites", &HilbertSpace::n_sites)
        .def_property_readonly("ell_max", &HilbertSpace::ell_max)
        .def_property_readonly("local_dim", &HilbertSpace::local_dim)
        .def_property_readonly("total_dim", &HilbertSpace::total_dim)
        .def("config_index",
             [](const HilbertSpace& s, const std::vector<int>& sigma) {
                 return s.config_index(list_to_config(sigma));
             })
        .def("config_at",
             [](const HilbertSpace& s, std::uint64_t index) { return s.config_at(index).sigma; });

    // ---- hamiltonian ----
    py::class_<SingleRotorOperators>(m, "SingleRotorOperators")
        .def_readonly("z_mat", &SingleRotorOperators::z_mat)
        .def_readonly("p_plus", &SingleRotorOperators::p_plus)
        .def_readonly("p_minus", &SingleRotorOperators::p_minus);
    m.def("build_single_rotor_ops", &build_single_rotor_ops, py::arg("ell_max"));

    py::class_<SparseHamiltonian>(m, "SparseHamiltonian")
        .def(py::init<HilbertSpace, double>(), py::arg("space"), py::arg("R"))
        .def_property_readonly("R", &SparseHamiltonian::separation)
        .def_property_readonly("space", &SparseHamiltonian::space)
        .def("apply", &SparseHamiltonian::apply, py::arg("v"))
        .def("dense", [](const SparseHamiltonian& h) { return dense_matrix(h); })
        .def("kinetic_diagonal", &SparseHamiltonian::kinetic_diagonal, py::arg("index"))
        .def("connected_configs", [](const SparseHamiltonian& h, const std::vector<int>& sigma) {
            std::vector<std::pair<std::vector<int>, double>> out;
            for (const auto& [config, value] : h.connected_configs(list_to_config(sigma)))
                out.emplace_back(config.sigma, value);
            return out;
        });

    // ---- eigensolver ----
    py::enum_<SolveMethod>(m, "SolveMethod")
        .value("dense", SolveMethod::dense)
        .value("lanczos", SolveMethod::lanczos);

    py::class_<GroundStateSolution>(m, "GroundStateSolution")
        .def_readonly("energy_0", &GroundStateSolution::energy_0)
        .def_readonly("energy_1", &GroundStateSolution::energy_1)
        .def_readonly("gap", &GroundStateSolution::gap)
        .def_readonly("amplitudes", &GroundStateSolution::amplitudes)
        .def_readonly("method", &GroundStateSolution::method)
        .def_readonly("residual", &GroundStateSolution::residual);

    m.def("ground_state", &ground_state, py::arg("hamiltonian"), py::arg("tol") = 1e-10,
          py::arg("max_iter") = 5000, py::arg("seed") = 20250617,
          py::call_guard<py::gil_scoped_release>());
    m.def("amplitude_ratio", &amplitude_ratio, py::arg("solution"));
    m.def("mass_outside_sector", &mass_outside_sector, py::arg("space"), py::arg("psi"),
          py::arg("total_m"), py::arg("ell_parity"));

    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("energies", &Spectrum::energies)
        .def_readonly("vectors", &Spectrum::vectors);
    m.def("dense_spectrum", &dense_spectrum, py::arg("hamiltonian"));

    // ---- signs ----
    py::class_<SignPartition>(m, "SignPartition")
        .def_readonly("reference_index", &SignPartition::reference_index)
        .def_readonly("negative_mask", &SignPartition::negative_mask)
        .def_readonly("tau_minus", &SignPartition::tau_minus)
        .def_readonly("tau_plus", &SignPartition::tau_plus);

    m.def("partition_signs", &partition_signs, py::arg("psi"), py::arg("reference") = 0);
    m.def("rectify", &rectify, py::arg("psi"), py::arg("partition"));
    m.def(
        "epsilon_general",
        [](const Eigen::VectorXd& psi, const Eigen::MatrixXd& a, const SignPartition& part) {
            return epsilon_general(psi, a, part);
        },
        py::arg("psi"), py::arg("operator"), py::arg("partition"));
    m.def("epsilon_energy", &epsilon_energy, py::arg("solution"), py::arg("hamiltonian"),
          py::arg("partition"));

    py::class_<ConvergenceRow>(m, "ConvergenceRow")
        .def_readonly("ell_max", &ConvergenceRow::ell_max)
        .def_readonly("tau_minus", &ConvergenceRow::tau_minus)
        .def_readonly("epsilon", &ConvergenceRow::epsilon)
        .def_readonly("gap", &ConvergenceRow::gap)
        .def_readonly("epsilon_over_gap", &ConvergenceRow::epsilon_over_gap);
    m.def("convergence_scan", &convergence_scan, py::arg("n_sites"), py::arg("R"),
          py::arg("ell_max_list"), py::arg("tol") = 1e-10, py::arg("max_iter") = 5000,
          py::arg("seed") = 20250617, py::call_guard<py::gil_scoped_release>());

    py::class_<StoquasticityReport>(m, "StoquasticityReport")
        .def_readonly("is_stoquastic", &StoquasticityReport::is_stoquastic)
        .def_readonly("max_positive_offdiag", &StoquasticityReport::max_positive_offdiag);
    m.def("stoquasticity_check", &stoquasticity_check, py::arg("hamiltonian"));

    // ---- sampling ----
    py::class_<MeasurementDataset>(m, "MeasurementDataset")
        .def_readonly("n_sites", &MeasurementDataset::n_sites)
        .def_readonly("ell_max", &MeasurementDataset::ell_max)
        .def_readonly("R", &MeasurementDataset::R)
        .def_readonly("seed", &MeasurementDataset::seed)
        .def_readonly("source", &MeasurementDataset::source)
        .def_property_readonly(
            "samples", [](const MeasurementDataset& ds) { return configs_to_array(ds.samples); })
        .def("__len__", [](const MeasurementDataset& ds) { return ds.samples.size(); });

    m.def("sample_exact", &sample_exact, py::arg("solution"), py::arg("space"), py::arg("R"),
          py::arg("count"), py::arg("seed"), py::call_guard<py::gil_scoped_release>());
    m.def("write_dataset", &write_dataset, py::arg("dataset"), py::arg("path"));
    m.def("read_dataset", &read_dataset, py::arg("path"));

    // ---- rbm ----
    py::class_<RbmParameters>(m, "RbmParameters")
        .def_readonly("n_sites", &RbmParameters::n_sites)
        .def_readonly("ell_max", &RbmParameters::ell_max)
        .def_readonly("local_dim", &RbmParameters::local_dim)
        .def_readonly("n_hidden", &RbmParameters::n_hidden)
        .def_readwrite("W", &RbmParameters::W)
        .def_readwrite("b", &RbmParameters::b)
        .def_readwrite("c", &RbmParameters::c);

    m.def("init_params", &init_params, py::arg("n_sites"), py::arg("ell_max"),
          py::arg("n_hidden"), py::arg("seed"));
    m.def("effective_energy", &effective_energy, py::arg("params"), py::arg("sigma"));
    m.def("unnormalized_psi", &unnormalized_psi, py::arg("params"), py::arg("sigma"));
    m.def("conditional_hidden", &conditional_hidden, py::arg("params"), py::arg("sigma"));
    m.def("conditional_visible", &conditional_visible, py::arg("params"), py::arg("hidden"));

    py::class_<GibbsChainState>(m, "GibbsChainState")
        .def_static("all_zero", &GibbsChainState::all_zero, py::arg("n_sites"),
                    py::arg("n_hidden"))
        .def_readwrite("visible", &GibbsChainState::visible)
        .def_readwrite("hidden", &GibbsChainState::hidden)
        .def_readonly("steps_taken", &GibbsChainState::steps_taken);

    m.def(
        "gibbs_sample",
        [](const RbmParameters& params, const GibbsChainState& start, int k, std::size_t count,
           std::uint64_t seed) {
            py::gil_scoped_release release;
            const auto samples = gibbs_sample(params, start, k, count, seed);
            py::gil_scoped_acquire acquire;
            return configs_to_array(samples);
        },
        py::arg("params"), py::arg("start"), py::arg("k"), py::arg("count"), py::arg("seed"));

    m.def(
        "gradients",
        [](const RbmParameters& params, const py::array_t<int>& positive,
           const py::array_t<int>& negative) {
            return gradients(params, array_to_configs(positive), array_to_configs(negative));
        },
        py::arg("params"), py::arg("positive_batch"), py::arg("negative_batch"));

    py::class_<TrainingConfig>(m, "TrainingConfig")
        .def(py::init<>())
        .def_readwrite("learning_rate", &TrainingConfig::learning_rate)
        .def_readwrite("positive_batch", &TrainingConfig::positive_batch)
        .def_readwrite("negative_batch", &TrainingConfig::negative_batch)
        .def_readwrite("gibbs_k", &TrainingConfig::gibbs_k)
        .def_readwrite("max_epochs", &TrainingConfig::max_epochs)
        .def_readwrite("eval_interval", &TrainingConfig::eval_interval)
        .def_readwrite("eval_samples", &TrainingConfig::eval_samples)
        .def_readwrite("eval_gibbs_steps", &TrainingConfig::eval_gibbs_steps)
        .def_readwrite("seed", &TrainingConfig::seed)
        .def_readwrite("target_delta", &TrainingConfig::target_delta);

    py::class_<TraceRow>(m, "TraceRow")
        .def_readonly("epoch", &TraceRow::epoch)
        .def_readonly("delta", &TraceRow::delta)
        .def_readonly("delta_stderr", &TraceRow::delta_stderr)
        .def_readonly("kinetic", &TraceRow::kinetic)
        .def_readonly("potential", &TraceRow::potential);

    py::class_<TrainResult>(m, "TrainResult")
        .def_readonly("params", &TrainResult::params)
        .def_readonly("trace", &TrainResult::trace)
        .def_readonly("reached", &TrainResult::reached)
        .def_readonly("epochs_used", &TrainResult::epochs_used);

    m.def(
        "train",
        [](const RbmParameters& initial, const MeasurementDataset& data,
           const TrainingConfig& cfg, const SparseHamiltonian& h,
           const GroundStateSolution& exact) {
            py::gil_scoped_release release;
            const Evaluator evaluator =
                make_energy_evaluator(h, exact, cfg.eval_samples, cfg.eval_gibbs_steps);
            return train(initial, data, cfg, evaluator);
        },
        py::arg("initial"), py::arg("data"), py::arg("config"), py::arg("hamiltonian"),
        py::arg("exact"),
        "Train with the standard energy evaluator against an exact solution.");

    m.def(
        "train_with_evaluator",
        [](const RbmParameters& initial, const MeasurementDataset& data,
           const TrainingConfig& cfg, const Evaluator& evaluator) {
            return train(initial, data, cfg, evaluator);
        },
        py::arg("initial"), py::arg("data"), py::arg("config"), py::arg("evaluator"),
        "Train with a custom evaluator callback (params, epoch, seed) -> EvalPoint tuple.");

    m.def("exact_partition", &exact_partition, py::arg("params"));
    m.def("exact_log_partition", &exact_log_partition, py::arg("params"));
    m.def("exact_kl", &exact_kl, py::arg("params"), py::arg("q"));
    m.def("save_params", &save_params, py::arg("params"), py::arg("path"));
    m.def("load_params", &load_params, py::arg("path"));

    // ---- estimators ----
    py::class_<EnergyEstimate>(m, "EnergyEstimate")
        .def_readonly("kinetic", &EnergyEstimate::kinetic)
        .def_readonly("potential", &EnergyEstimate::potential)
        .def_readonly("total", &EnergyEstimate::total)
        .def_readonly("std_error", &EnergyEstimate::std_error)
        .def_readonly("n_samples", &EnergyEstimate::n_samples);

    py::class_<EvalPoint>(m, "EvalPoint")
        .def(py::init<>())
        .def_readwrite("delta", &EvalPoint::delta)
        .def_readwrite("delta_stderr", &EvalPoint::delta_stderr)
        .def_readwrite("kinetic", &EvalPoint::kinetic)
        .def_readwrite("potential", &EvalPoint::potential);

    m.def(
        "kinetic_estimator",
        [](const py::array_t<int>& samples) { return kinetic_estimator(array_to_configs(samples)); },
        py::arg("samples"));
    m.def(
        "potential_estimator",
        [](const RbmParameters& params, const py::array_t<int>& samples,
           const SparseHamiltonian& h) {
            return potential_estimator(params, array_to_configs(samples), h);
        },
        py::arg("params"), py::arg("samples"), py::arg("hamiltonian"));
    m.def(
        "energy_rbm",
        [](const RbmParameters& params, const py::array_t<int>& samples,
           const SparseHamiltonian& h) {
            return energy_rbm(params, array_to_configs(samples), h);
        },
        py::arg("params"), py::arg("samples"), py::arg("hamiltonian"));
    m.def("energy_rbm_exhaustive", &energy_rbm_exhaustive, py::arg("params"),
          py::arg("hamiltonian"));
    m.def("delta", &delta, py::arg("e_rbm"), py::arg("e_exact"), py::arg("gap"));
    m.def(
        "symmetry_violation_fraction",
        [](const py::array_t<int>& samples) {
            const SymmetryPartition part = symmetry_violation_fraction(array_to_configs(samples));
            return py::make_tuple(part.fraction, part.satisfying, part.violating);
        },
        py::arg("samples"));
    m.def("contamination_proxy", &contamination_proxy, py::arg("psi_approx"),
          py::arg("spectrum"));

#ifdef VERSION_INFO
#define ROTORREC_STR2(x) #x
#define ROTORREC_STR(x) ROTORREC_STR2(x)
    m.attr("__version__") = ROTORREC_STR(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
