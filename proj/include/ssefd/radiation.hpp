#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssefd/lindblad.hpp"
#include "ssefd/spectrum.hpp"

namespace ssefd {

// Oscillating part of the steady polarization, P(t) = A cos(2 omega_l t - theta).
struct PolarizationWave {
    double amplitude = 0.0;      // C m, A = e z12 |rho21|
    double phase_theta = 0.0;    // rad, arg(rho21) + 2 phi (0 when rho21 = 0)
    double carrier = 0.0;        // rad/s, exactly 2 omega_l
    double static_dipole = 0.0;  // C m, e (rho11 z11 + rho22 z22), not radiated
};

PolarizationWave polarization_wave(const TwoLevelSystem& sys, const DensityMatrix2& steady,
                                   const DriveField& drive,
                                   const PhysicalConstants& c = PhysicalConstants::liquid_helium());

// Radiated second-harmonic intensity |rho21|^2 versus detuning: exact closed
// form next to the weak-saturation Lorentzian
//   (W/K)^2 / [1 + (D'/K)^2 + 8 W^2/(K Gamma)].
struct IntensityCurve {
    std::vector<double> detuning_over_K;  // dimensionless axis
    std::vector<double> intensity_exact;
    std::vector<double> intensity_approx;
};

IntensityCurve intensity_lorentzian(const EffectiveParams& params, const DissipationRates& rates,
                                    double half_range_over_K, int samples,
                                    double phase_phi = 0.0);

double intensity_lorentzian_approx(double omega_rabi_2w, double delta_prime,
                                   const DissipationRates& rates);

struct SpectrumReport {
    PowerSpectrum spectrum;            // analysis-window power spectrum of <z(t)>
    std::vector<SpectralPeak> peaks;   // strongest peaks, descending power
    double dominant_omega = 0.0;       // rad/s, strongest non-DC component
    double omega_2wl = 0.0;            // rad/s, 2 omega_l reference
    double power_at_2wl = 0.0;         // padded-bin power nearest 2 omega_l
    double bin_width = 0.0;            // rad/s, honest (unpadded) resolution
    double analysis_t_start = 0.0;     // s, start of the analyzed tail
};

// Dipole spectrum from the laboratory-frame dynamics. Evolves the master
// equation (or, with zero rates, the pure state), forms
//   <z(t)> = rho11 z11 + rho22 z22 + 2 z12 Re rho21,
// and Fourier-analyzes the trailing half of the trajectory so the initial
// transient does not mask the steady response. Requires the analysis window
// to cover >= 20 envelope periods when the second-harmonic coupling is
// nonzero; throws NumericalError otherwise.
SpectrumReport spectrum_from_dynamics(
    const TwoLevelSystem& sys, const DriveField& drive,
    const std::optional<DissipationRates>& rates, const PropagationConfig& cfg,
    const PhysicalConstants& c = PhysicalConstants::liquid_helium());

}  // namespace ssefd
