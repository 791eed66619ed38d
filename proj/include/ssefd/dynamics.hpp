#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ssefd/model.hpp"

namespace ssefd {

struct PureState2 {
    std::complex<double> c1{1.0, 0.0};
    std::complex<double> c2{0.0, 0.0};

    double norm_sq() const { return std::norm(c1) + std::norm(c2); }
    static PureState2 ground() { return {}; }
    static PureState2 excited() { return {{0.0, 0.0}, {1.0, 0.0}}; }
};

enum class Frame { lab_eq3, effective_HR_eq6, effective_HL_eq8 };

// Default tolerances keep the norm (or trace) error below 1e-9 even over
// hundred-nanosecond runs; the accumulated error scales with steps * rel_tol.
struct PropagationConfig {
    double t_end = 0.0;       // s
    int output_samples = 2;   // uniform grid including both endpoints
    double rel_tol = 1e-13;
    double abs_tol = 1e-16;
    Frame frame = Frame::lab_eq3;

    void validate() const;
    std::vector<double> sample_times() const;
};

struct Trajectory {
    std::vector<double> times;            // s, uniform, strictly increasing
    std::vector<double> rho22;            // clamped to [0, 1]
    std::vector<PureState2> states;       // raw amplitudes per sample
    double max_norm_drift = 0.0;          // max ||psi|^2 - 1| observed
};

// Exact time-dependent Schroedinger propagation of the driven two-level
// electron in the laboratory frame,
//   H(t)/hbar = (omega_e/2) sigma_z
//               - (e E(t)/hbar) [ (z22-z11)/2 sigma_z + z12 sigma_x ],
// with E(t) = amplitude cos(omega_l t + phase). Adaptive error control;
// throws NumericalError if the norm drifts beyond budget.
Trajectory propagate_lab(const TwoLevelSystem& sys, const DriveField& drive,
                         const PureState2& init, const PropagationConfig& cfg,
                         const PhysicalConstants& c = PhysicalConstants::liquid_helium());

// Closed-form propagation under the time-independent effective Hamiltonians:
// resonant frame (detuning omega_e - omega_l, coupling omega_rabi, phase phi)
// or second-harmonic frame (detuning delta_prime, coupling omega_rabi_2w,
// phase 2*phi). For the latter with init = |1>:
//   rho22(t) = [W^2/(W^2 + D'^2/4)] sin^2( sqrt(W^2 + D'^2/4) t ).
Trajectory propagate_effective(const EffectiveParams& params, double phase_phi,
                               const PureState2& init, const PropagationConfig& cfg);

struct ComparisonReport {
    double max_abs_gap = 0.0;        // max_t |rho22_exact - rho22_effective|
    double freq_exact = 0.0;         // rad/s, dominant oscillation frequency
    double freq_effective = 0.0;     // rad/s
    double rel_freq_mismatch = 0.0;  // |exact - effective| / effective
    double xi = 0.0;
    std::string warning;             // set when the weak-drive regime is violated
};

// Exact lab-frame trajectory against the second-harmonic closed form on the
// same sample grid. Emits a warning (not a failure) when xi >= 1/10.
ComparisonReport compare_exact_vs_effective(
    const TwoLevelSystem& sys, const DriveField& drive, const PropagationConfig& cfg,
    const PhysicalConstants& c = PhysicalConstants::liquid_helium());

}  // namespace ssefd
