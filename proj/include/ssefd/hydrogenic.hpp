#pragma once

#include <string>
#include <vector>

#include "ssefd/constants.hpp"

namespace ssefd {

// E_n = -R/n^2 as an angular frequency.
double analytic_energy(int n, const PhysicalConstants& c = PhysicalConstants::liquid_helium());

// Closed-form eigenfunctions of the image potential with a hard wall at z = 0
// (unit-normalized on (0, inf), amplitude in m^{-1/2}):
//   psi1(z) = 2 r^{-3/2} z e^{-z/r}
//   psi2(z) = (1/sqrt(2)) r^{-3/2} z (1 - z/(2r)) e^{-z/(2r)}
// Only n in {1, 2} is supported.
double analytic_wavefunction(int n, double z,
                             const PhysicalConstants& c = PhysicalConstants::liquid_helium());

// <m|z|n> by adaptive quadrature against the analytic wavefunctions;
// symmetric in (m, n), m, n in {1, 2}.
double dipole_matrix_element(int m, int n,
                             const PhysicalConstants& c = PhysicalConstants::liquid_helium());

// Uniform z > 0 grid for the finite-difference eigenproblem. The first grid
// point may sit closer to the wall than one spacing; the wall itself is
// always at z = 0.
struct SurfaceStateBasis {
    int n_max = 2;
    std::vector<double> grid;    // m, strictly increasing, uniform
    double holding_field = 0.0;  // V/m, adds e*E*z to the potential

    // Spacing 0.0125 r_B on [1e-3 r_B, max(200, 40 n_max^2) r_B].
    static SurfaceStateBasis standard(
        int n_max, const PhysicalConstants& c = PhysicalConstants::liquid_helium());

    void validate(const PhysicalConstants& c = PhysicalConstants::liquid_helium()) const;
};

struct EigenSolution {
    std::vector<double> energies;                    // rad/s, ascending
    std::vector<std::vector<double>> wavefunctions;  // per level, m^{-1/2} on the grid
};

// Lowest n_max eigenpairs of
//   -(hbar^2/2m) psi'' - (Lambda e^2 / 4 pi eps0) psi / z + e E_perp z psi
// discretized with second-order central differences and Dirichlet walls.
// A refined-grid check guards against under-resolution.
EigenSolution grid_eigensolve(const SurfaceStateBasis& basis,
                              const PhysicalConstants& c = PhysicalConstants::liquid_helium());

struct StarkSlopeResult {
    double slope_hz_per_v_cm = 0.0;          // d[(E2-E1)/h]/dE_perp, central difference
    double perturbative_hz_per_v_cm = 0.0;   // e (z22 - z11)/h from the zero-field solution
    std::string warning;                     // set when the probed range is visibly nonlinear
};

// Stark tuning rate of the 1 -> 2 transition. probe_field is the +/- E_perp
// used for the central difference.
StarkSlopeResult stark_slope(const SurfaceStateBasis& basis, double probe_field = 25.0,
                             const PhysicalConstants& c = PhysicalConstants::liquid_helium());

// Trapezoidal integral of f (sampled on grid) -- shared by tests and reports.
double trapezoid(const std::vector<double>& grid, const std::vector<double>& f);

}  // namespace ssefd
