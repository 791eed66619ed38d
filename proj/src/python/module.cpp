#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ssefd/dynamics.hpp"
#include "ssefd/hydrogenic.hpp"
#include "ssefd/lindblad.hpp"
#include "ssefd/model.hpp"
#include "ssefd/radiation.hpp"

namespace py = pybind11;
using namespace ssefd;

PYBIND11_MODULE(ssefd, m) {
    m.doc() = "Frequency-doubling dynamics of surface-state electrons on liquid helium";

    py::class_<PhysicalConstants>(m, "PhysicalConstants")
        .def(py::init<>())
        .def_static("liquid_helium", &PhysicalConstants::liquid_helium)
        .def_readwrite("electron_charge", &PhysicalConstants::electron_charge)
        .def_readwrite("hbar", &PhysicalConstants::hbar)
        .def_readwrite("electron_mass", &PhysicalConstants::electron_mass)
        .def_readwrite("epsilon_he", &PhysicalConstants::epsilon_he)
        .def_readwrite("lambda_image", &PhysicalConstants::lambda_image)
        .def_readwrite("rydberg_R", &PhysicalConstants::rydberg_R)
        .def_readwrite("bohr_rB", &PhysicalConstants::bohr_rB);

    py::class_<TwoLevelSystem>(m, "TwoLevelSystem")
        .def(py::init<>())
        .def_readwrite("omega_e", &TwoLevelSystem::omega_e)
        .def_readwrite("z11", &TwoLevelSystem::z11)
        .def_readwrite("z22", &TwoLevelSystem::z22)
        .def_readwrite("z12", &TwoLevelSystem::z12)
        .def("dz", &TwoLevelSystem::dz);

    py::class_<DriveField>(m, "DriveField")
        .def(py::init<>())
        .def_readwrite("amplitude", &DriveField::amplitude)
        .def_readwrite("omega_l", &DriveField::omega_l)
        .def_readwrite("phase", &DriveField::phase);

    py::class_<EffectiveParams>(m, "EffectiveParams")
        .def(py::init<>())
        .def_readwrite("omega_rabi", &EffectiveParams::omega_rabi)
        .def_readwrite("omega_stark", &EffectiveParams::omega_stark)
        .def_readwrite("delta", &EffectiveParams::delta)
        .def_readwrite("nu", &EffectiveParams::nu)
        .def_readwrite("omega_rabi_2w", &EffectiveParams::omega_rabi_2w)
        .def_readwrite("delta_prime", &EffectiveParams::delta_prime)
        .def_readwrite("omega_e", &EffectiveParams::omega_e)
        .def_readwrite("omega_l", &EffectiveParams::omega_l)
        .def("xi", &EffectiveParams::xi);

    py::class_<ResonantDrive>(m, "ResonantDrive")
        .def_readonly("delta", &ResonantDrive::delta)
        .def_readonly("omega_l", &ResonantDrive::omega_l);

    py::class_<PureState2>(m, "PureState2")
        .def(py::init<>())
        .def_static("ground", &PureState2::ground)
        .def_static("excited", &PureState2::excited)
        .def_readwrite("c1", &PureState2::c1)
        .def_readwrite("c2", &PureState2::c2)
        .def("norm_sq", &PureState2::norm_sq);

    py::enum_<Frame>(m, "Frame")
        .value("lab_eq3", Frame::lab_eq3)
        .value("effective_HR_eq6", Frame::effective_HR_eq6)
        .value("effective_HL_eq8", Frame::effective_HL_eq8);

    py::class_<PropagationConfig>(m, "PropagationConfig")
        .def(py::init<>())
        .def_readwrite("t_end", &PropagationConfig::t_end)
        .def_readwrite("output_samples", &PropagationConfig::output_samples)
        .def_readwrite("rel_tol", &PropagationConfig::rel_tol)
        .def_readwrite("abs_tol", &PropagationConfig::abs_tol)
        .def_readwrite("frame", &PropagationConfig::frame);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("rho22", &Trajectory::rho22)
        .def_readonly("max_norm_drift", &Trajectory::max_norm_drift);

    py::class_<DensityMatrix2>(m, "DensityMatrix2")
        .def(py::init<>())
        .def_static("ground", &DensityMatrix2::ground)
        .def_static("excited", &DensityMatrix2::excited)
        .def_readwrite("rho11", &DensityMatrix2::rho11)
        .def_readwrite("rho22", &DensityMatrix2::rho22)
        .def_readwrite("rho21", &DensityMatrix2::rho21)
        .def("min_eigenvalue", &DensityMatrix2::min_eigenvalue);

    py::class_<DissipationRates>(m, "DissipationRates")
        .def(py::init<>())
        .def(py::init([](double Gamma, double gamma) {
                 return DissipationRates{Gamma, gamma};
             }),
             py::arg("Gamma"), py::arg("gamma"))
        .def_readwrite("Gamma", &DissipationRates::Gamma)
        .def_readwrite("gamma", &DissipationRates::gamma)
        .def("K", &DissipationRates::K);

    py::class_<MasterTrajectory>(m, "MasterTrajectory")
        .def_readonly("times", &MasterTrajectory::times)
        .def_readonly("rho11", &MasterTrajectory::rho11)
        .def_readonly("rho22", &MasterTrajectory::rho22)
        .def_readonly("rho21", &MasterTrajectory::rho21)
        .def_readonly("max_trace_drift", &MasterTrajectory::max_trace_drift)
        .def_readonly("min_eigenvalue", &MasterTrajectory::min_eigenvalue);

    py::class_<ComparisonReport>(m, "ComparisonReport")
        .def_readonly("max_abs_gap", &ComparisonReport::max_abs_gap)
        .def_readonly("freq_exact", &ComparisonReport::freq_exact)
        .def_readonly("freq_effective", &ComparisonReport::freq_effective)
        .def_readonly("rel_freq_mismatch", &ComparisonReport::rel_freq_mismatch)
        .def_readonly("xi", &ComparisonReport::xi)
        .def_readonly("warning", &ComparisonReport::warning);

    py::class_<PolarizationWave>(m, "PolarizationWave")
        .def_readonly("amplitude", &PolarizationWave::amplitude)
        .def_readonly("phase_theta", &PolarizationWave::phase_theta)
        .def_readonly("carrier", &PolarizationWave::carrier)
        .def_readonly("static_dipole", &PolarizationWave::static_dipole);

    py::class_<IntensityCurve>(m, "IntensityCurve")
        .def_readonly("detuning_over_K", &IntensityCurve::detuning_over_K)
        .def_readonly("intensity_exact", &IntensityCurve::intensity_exact)
        .def_readonly("intensity_approx", &IntensityCurve::intensity_approx);

    py::class_<SpectralPeak>(m, "SpectralPeak")
        .def_readonly("omega", &SpectralPeak::omega)
        .def_readonly("power", &SpectralPeak::power);

    py::class_<SpectrumReport>(m, "SpectrumReport")
        .def_readonly("peaks", &SpectrumReport::peaks)
        .def_readonly("dominant_omega", &SpectrumReport::dominant_omega)
        .def_readonly("omega_2wl", &SpectrumReport::omega_2wl)
        .def_readonly("power_at_2wl", &SpectrumReport::power_at_2wl)
        .def_readonly("bin_width", &SpectrumReport::bin_width);

    py::class_<SurfaceStateBasis>(m, "SurfaceStateBasis")
        .def(py::init<>())
        .def_static("standard", &SurfaceStateBasis::standard, py::arg("n_max"),
                    py::arg("constants") = PhysicalConstants::liquid_helium())
        .def_readwrite("n_max", &SurfaceStateBasis::n_max)
        .def_readwrite("grid", &SurfaceStateBasis::grid)
        .def_readwrite("holding_field", &SurfaceStateBasis::holding_field);

    py::class_<EigenSolution>(m, "EigenSolution")
        .def_readonly("energies", &EigenSolution::energies)
        .def_readonly("wavefunctions", &EigenSolution::wavefunctions);

    py::class_<StarkSlopeResult>(m, "StarkSlopeResult")
        .def_readonly("slope_hz_per_v_cm", &StarkSlopeResult::slope_hz_per_v_cm)
        .def_readonly("perturbative_hz_per_v_cm", &StarkSlopeResult::perturbative_hz_per_v_cm)
        .def_readonly("warning", &StarkSlopeResult::warning);

    const PhysicalConstants default_c = PhysicalConstants::liquid_helium();

    m.def("drive_couplings",
          [](const TwoLevelSystem& sys, const DriveField& d, const PhysicalConstants& c) {
              const auto r = drive_couplings(sys, d, c);
              return py::make_tuple(r.omega_rabi, r.omega_stark);
          },
          py::arg("sys"), py::arg("drive"), py::arg("constants") = default_c);
    m.def("derive_drive_params", &derive_drive_params, py::arg("sys"), py::arg("drive"),
          py::arg("constants") = default_c);
    m.def("resonant_delta", &resonant_delta, py::arg("sys"), py::arg("omega_rabi"));
    m.def("resonant_delta_exact", &resonant_delta_exact, py::arg("sys"), py::arg("omega_rabi"));
    m.def("level_shift_nu", &level_shift_nu, py::arg("omega_e"), py::arg("omega_rabi"),
          py::arg("delta"));

    m.def("propagate_lab", &propagate_lab, py::arg("sys"), py::arg("drive"), py::arg("init"),
          py::arg("cfg"), py::arg("constants") = default_c);
    m.def("propagate_effective", &propagate_effective, py::arg("params"), py::arg("phase_phi"),
          py::arg("init"), py::arg("cfg"));
    m.def("compare_exact_vs_effective", &compare_exact_vs_effective, py::arg("sys"),
          py::arg("drive"), py::arg("cfg"), py::arg("constants") = default_c);

    m.def("evolve_master",
          py::overload_cast<const EffectiveParams&, double, const DissipationRates&,
                            const DensityMatrix2&, const PropagationConfig&>(&evolve_master),
          py::arg("params"), py::arg("phase_phi"), py::arg("rates"), py::arg("init"),
          py::arg("cfg"));
    m.def("evolve_master_lab",
          [](const TwoLevelSystem& sys, const DriveField& d, const DissipationRates& rates,
             const DensityMatrix2& init, const PropagationConfig& cfg,
             const PhysicalConstants& c) { return evolve_master(sys, d, rates, init, cfg, c); },
          py::arg("sys"), py::arg("drive"), py::arg("rates"), py::arg("init"), py::arg("cfg"),
          py::arg("constants") = default_c);
    m.def("steady_state", &steady_state, py::arg("params"), py::arg("rates"),
          py::arg("phase_phi"));
    m.def("steady_state_residual", &steady_state_residual, py::arg("params"), py::arg("rates"),
          py::arg("phase_phi"), py::arg("state"));

    m.def("polarization_wave", &polarization_wave, py::arg("sys"), py::arg("steady"),
          py::arg("drive"), py::arg("constants") = default_c);
    m.def("intensity_lorentzian", &intensity_lorentzian, py::arg("params"), py::arg("rates"),
          py::arg("half_range_over_K"), py::arg("samples"), py::arg("phase_phi") = 0.0);
    m.def("spectrum_from_dynamics",
          [](const TwoLevelSystem& sys, const DriveField& d,
             const std::optional<DissipationRates>& rates, const PropagationConfig& cfg,
             const PhysicalConstants& c) {
              return spectrum_from_dynamics(sys, d, rates, cfg, c);
          },
          py::arg("sys"), py::arg("drive"), py::arg("rates"), py::arg("cfg"),
          py::arg("constants") = default_c);

    m.def("analytic_energy", &analytic_energy, py::arg("n"),
          py::arg("constants") = default_c);
    m.def("analytic_wavefunction", &analytic_wavefunction, py::arg("n"), py::arg("z"),
          py::arg("constants") = default_c);
    m.def("dipole_matrix_element", &dipole_matrix_element, py::arg("m"), py::arg("n"),
          py::arg("constants") = default_c);
    m.def("grid_eigensolve", &grid_eigensolve, py::arg("basis"),
          py::arg("constants") = default_c);
    m.def("stark_slope", &stark_slope, py::arg("basis"), py::arg("probe_field") = 25.0,
          py::arg("constants") = default_c);
}
