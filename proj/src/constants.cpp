#include "ssefd/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ssefd {

PhysicalConstants PhysicalConstants::liquid_helium() {
    PhysicalConstants c;
    c.electron_charge = 1.602176634e-19;
    c.hbar = 1.054571817e-34;
    c.electron_mass = 9.1093837015e-31;
    c.epsilon_he = 1.0572;
    c.lambda_image = (c.epsilon_he - 1.0) / (4.0 * (c.epsilon_he + 1.0));

    // r_B = a0/Lambda with a0 the ordinary Bohr radius; R = hbar/(2 m r_B^2).
    const double eps0 = 8.8541878128e-12;
    const double a0 = 4.0 * std::numbers::pi * eps0 * c.hbar * c.hbar /
                      (c.electron_mass * c.electron_charge * c.electron_charge);
    c.bohr_rB = a0 / c.lambda_image;
    c.rydberg_R = c.hbar / (2.0 * c.electron_mass * c.bohr_rB * c.bohr_rB);
    return c;
}

void PhysicalConstants::validate() const {
    if (!(electron_charge > 0.0) || !(hbar > 0.0) || !(electron_mass > 0.0))
        throw std::invalid_argument("PhysicalConstants: e, hbar, m_e must be positive");
    if (!(epsilon_he > 1.0))
        throw std::invalid_argument("PhysicalConstants: epsilon_he must exceed 1");
    const double lam = (epsilon_he - 1.0) / (4.0 * (epsilon_he + 1.0));
    if (!(lambda_image > 0.0) || std::abs(lambda_image - lam) > 1e-12 * lam)
        throw std::invalid_argument("PhysicalConstants: lambda_image inconsistent with epsilon_he");
    if (!(rydberg_R > 0.0) || !(bohr_rB > 0.0))
        throw std::invalid_argument("PhysicalConstants: rydberg_R and bohr_rB must be positive");
}

}  // namespace ssefd
