#pragma once

#include <complex>
#include <vector>

#include "ssefd/dynamics.hpp"
#include "ssefd/model.hpp"

namespace ssefd {

struct DensityMatrix2 {
    double rho11 = 1.0;
    double rho22 = 0.0;
    std::complex<double> rho21{0.0, 0.0};

    static DensityMatrix2 ground() { return {}; }
    static DensityMatrix2 excited() { return {0.0, 1.0, {0.0, 0.0}}; }

    // Eigenvalues 1/2 +- sqrt((rho11-rho22)^2/4 + |rho21|^2).
    double min_eigenvalue() const;
    void validate() const;
};

// Decay Gamma (population relaxation |2> -> |1>) and pure dephasing gamma;
// the coherence decays at K = (Gamma + gamma)/2.
struct DissipationRates {
    double Gamma = 0.0;  // rad/s
    double gamma = 0.0;  // rad/s

    double K() const { return 0.5 * (Gamma + gamma); }
    void validate() const;
};

struct MasterTrajectory {
    std::vector<double> times;  // s
    std::vector<double> rho11;
    std::vector<double> rho22;
    std::vector<std::complex<double>> rho21;
    double max_trace_drift = 0.0;      // max |rho11 + rho22 - 1|
    double min_eigenvalue = 0.0;       // most negative density-matrix eigenvalue seen
};

// Master equation with the second-harmonic effective generator:
//   d rho11/dt = -2 W Im(e^{i 2 phi} rho21) + Gamma rho22
//   d rho22/dt = +2 W Im(e^{i 2 phi} rho21) - Gamma rho22
//   d rho21/dt = i [ W e^{-i 2 phi} (rho11 - rho22) - D' rho21 ] - K rho21
// with W = omega_rabi_2w and D' = delta_prime.
MasterTrajectory evolve_master(const EffectiveParams& params, double phase_phi,
                               const DissipationRates& rates, const DensityMatrix2& init,
                               const PropagationConfig& cfg);

// Same dissipators with the exact laboratory-frame Hamiltonian as generator.
MasterTrajectory evolve_master(const TwoLevelSystem& sys, const DriveField& drive,
                               const DissipationRates& rates, const DensityMatrix2& init,
                               const PropagationConfig& cfg,
                               const PhysicalConstants& c = PhysicalConstants::liquid_helium());

// Closed-form steady state of the effective-generator master equation:
//   rho22 = 2 W^2 K / [ Gamma (K^2 + D'^2) + 4 W^2 K ]
//   rho21 = W e^{-i 2 phi} (rho11 - rho22) (i K + D') / (K^2 + D'^2)
// Throws NumericalError for Gamma = 0 with W > 0 (no population balance);
// requires at least one of (W, Gamma) nonzero.
DensityMatrix2 steady_state(const EffectiveParams& params, const DissipationRates& rates,
                            double phase_phi);

// Max-abs right-hand-side residual of the master equation at the given state;
// ~0 at the steady state.
double steady_state_residual(const EffectiveParams& params, const DissipationRates& rates,
                             double phase_phi, const DensityMatrix2& state);

struct SteadyConsistencyReport {
    double max_abs_diff = 0.0;  // elementwise, long-time trajectory vs closed form
    double t_used = 0.0;        // s
    bool converged = false;     // max_abs_diff < 1e-6
};

// Integrates the effective-generator master equation to t = 20/Gamma and
// compares with the closed-form steady state.
SteadyConsistencyReport steady_vs_longtime(const EffectiveParams& params, double phase_phi,
                                           const DissipationRates& rates,
                                           const PropagationConfig& cfg);

}  // namespace ssefd
