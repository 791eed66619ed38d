#pragma once

namespace ssefd {

// Physical constants for an electron bound above a liquid-helium surface by
// its dielectric image charge. The image potential V(z) = -Lambda*e^2/z
// (Gaussian form) gives a 1D hydrogen-like spectrum E_n = -R/n^2 with
// effective Bohr radius r_B. All frequencies in this library are angular
// (rad/s); lengths are meters.
struct PhysicalConstants {
    double electron_charge = 0.0;  // C
    double hbar = 0.0;             // J s
    double electron_mass = 0.0;    // kg
    double epsilon_he = 0.0;       // dielectric constant of liquid helium
    double lambda_image = 0.0;     // (eps-1)/(4(eps+1))
    double rydberg_R = 0.0;        // rad/s, |ground-state energy|/hbar
    double bohr_rB = 0.0;          // m

    // CODATA values with epsilon_he = 1.0572; yields r_B ~ 76 Angstrom and
    // R/2pi ~ 0.16 THz.
    static PhysicalConstants liquid_helium();

    void validate() const;
};

}  // namespace ssefd
