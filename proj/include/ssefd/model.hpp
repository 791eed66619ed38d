#pragma once

#include "ssefd/constants.hpp"

namespace ssefd {

// Two levels of the surface-state electron. Because the eigenstates live on
// z > 0 against a hard wall, the diagonal dipole elements z11, z22 are
// nonzero, unlike parity-symmetric atoms. z12 is real and symmetric.
struct TwoLevelSystem {
    double omega_e = 0.0;  // rad/s, transition |1> -> |2>
    double z11 = 0.0;      // m
    double z22 = 0.0;      // m
    double z12 = 0.0;      // m, transition dipole element

    double dz() const { return z22 - z11; }
    void validate() const;
};

// Classical microwave drive along z: E(t) = amplitude * cos(omega_l t + phase).
struct DriveField {
    double amplitude = 0.0;  // V/m
    double omega_l = 0.0;    // rad/s
    double phase = 0.0;      // rad

    void validate() const;
};

// Derived working-point parameters of the driven system.
struct EffectiveParams {
    double omega_rabi = 0.0;     // z12*e*E/(2 hbar), transition-dipole coupling
    double omega_stark = 0.0;    // (z22-z11)*e*E/(4 hbar), diagonal-dipole coupling
    double delta = 0.0;          // 2*omega_l - omega_e
    double nu = 0.0;             // drive-induced level shift at this delta
    double omega_rabi_2w = 0.0;  // second-harmonic (two-photon) Rabi frequency
    double delta_prime = 0.0;    // nu - delta

    // Inputs carried along so downstream frames can be reconstructed.
    double omega_e = 0.0;
    double omega_l = 0.0;

    // Weak-drive smallness parameter max(rabi, stark)/min(omega_l, omega_e).
    double xi() const;
};

// Bare drive couplings; no resonance bookkeeping, valid at any omega_l.
struct DriveCouplings {
    double omega_rabi = 0.0;
    double omega_stark = 0.0;
};

DriveCouplings drive_couplings(const TwoLevelSystem& sys, const DriveField& drive,
                               const PhysicalConstants& c = PhysicalConstants::liquid_helium());

// Populates all effective parameters. Throws NumericalError when
// delta^2 == omega_e^2 (pole of the two-photon Rabi frequency).
EffectiveParams derive_drive_params(const TwoLevelSystem& sys, const DriveField& drive,
                                    const PhysicalConstants& c = PhysicalConstants::liquid_helium());

struct ResonantDrive {
    double delta = 0.0;    // rad/s
    double omega_l = 0.0;  // rad/s; delta == 2*omega_l - omega_e holds exactly
};

// Closed-form drive frequency that cancels the effective detuning to first
// order in delta/omega_e:
//   delta   = 48 omega_e rabi^2 / (9 omega_e^2 - 32 rabi^2)
//   omega_l = omega_e/2 + delta/2
// Requires 9 omega_e^2 > 32 rabi^2.
ResonantDrive resonant_delta(const TwoLevelSystem& sys, double omega_rabi);

// Numerical root of nu(delta) - delta = 0 with the untruncated level shift,
// bracketed on (0, omega_e/2); |nu - delta| < 1e-12 * omega_e at the result.
double resonant_delta_exact(const TwoLevelSystem& sys, double omega_rabi);

// nu(delta) = 4 rabi^2 [1/(omega_e - delta) + 1/(3 omega_e + delta)]
double level_shift_nu(double omega_e, double omega_rabi, double delta);

}  // namespace ssefd
