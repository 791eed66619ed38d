#include "ssefd/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ssefd/errors.hpp"

namespace ssefd {

void TwoLevelSystem::validate() const {
    if (!(omega_e > 0.0))
        throw std::invalid_argument("TwoLevelSystem: omega_e must be positive");
    if (z12 == 0.0)
        throw std::invalid_argument("TwoLevelSystem: z12 must be nonzero");
    if (!std::isfinite(z11) || !std::isfinite(z22) || !std::isfinite(z12))
        throw std::invalid_argument("TwoLevelSystem: dipole elements must be finite");
}

void DriveField::validate() const {
    if (!(amplitude >= 0.0))
        throw std::invalid_argument("DriveField: amplitude must be >= 0");
    if (!(omega_l > 0.0))
        throw std::invalid_argument("DriveField: omega_l must be positive");
    if (!std::isfinite(phase))
        throw std::invalid_argument("DriveField: phase must be finite");
}

double EffectiveParams::xi() const {
    return std::max(std::abs(omega_rabi), std::abs(omega_stark)) /
           std::min(omega_l, omega_e);
}

DriveCouplings drive_couplings(const TwoLevelSystem& sys, const DriveField& drive,
                               const PhysicalConstants& c) {
    const double eE = c.electron_charge * drive.amplitude;
    return {sys.z12 * eE / (2.0 * c.hbar), sys.dz() * eE / (4.0 * c.hbar)};
}

double level_shift_nu(double omega_e, double omega_rabi, double delta) {
    return 4.0 * omega_rabi * omega_rabi *
           (1.0 / (omega_e - delta) + 1.0 / (3.0 * omega_e + delta));
}

EffectiveParams derive_drive_params(const TwoLevelSystem& sys, const DriveField& drive,
                                    const PhysicalConstants& c) {
    sys.validate();
    drive.validate();

    EffectiveParams p;
    p.omega_e = sys.omega_e;
    p.omega_l = drive.omega_l;

    const auto coup = drive_couplings(sys, drive, c);
    p.omega_rabi = coup.omega_rabi;
    p.omega_stark = coup.omega_stark;
    p.delta = 2.0 * drive.omega_l - sys.omega_e;

    const double pole = sys.omega_e * sys.omega_e - p.delta * p.delta;
    if (pole == 0.0)
        throw NumericalError("derive_drive_params: singular parameters, delta^2 == omega_e^2");

    p.nu = level_shift_nu(sys.omega_e, p.omega_rabi, p.delta);
    p.omega_rabi_2w = 4.0 * p.omega_rabi * p.omega_stark * sys.omega_e / pole;
    p.delta_prime = p.nu - p.delta;
    return p;
}

ResonantDrive resonant_delta(const TwoLevelSystem& sys, double omega_rabi) {
    sys.validate();
    const double we = sys.omega_e;
    const double denom = 9.0 * we * we - 32.0 * omega_rabi * omega_rabi;
    if (!(denom > 0.0))
        throw NumericalError(
            "resonant_delta: drive too strong for the expansion (9 omega_e^2 <= 32 rabi^2)");
    ResonantDrive r;
    r.omega_l = 0.5 * we + 24.0 * we * omega_rabi * omega_rabi / denom;
    // 2*omega_l is within a factor two of omega_e, so this subtraction is
    // exact and the identity delta == 2*omega_l - omega_e holds bit-for-bit.
    r.delta = 2.0 * r.omega_l - we;
    return r;
}

double resonant_delta_exact(const TwoLevelSystem& sys, double omega_rabi) {
    sys.validate();
    if (omega_rabi == 0.0) return 0.0;

    const double we = sys.omega_e;
    const auto f = [&](double d) { return level_shift_nu(we, omega_rabi, d) - d; };

    // f(0+) = 16 rabi^2/(3 omega_e) > 0; scan for a sign change up to omega_e/2.
    double lo = 0.0;
    double hi = 0.0;
    const int scan = 64;
    for (int i = 1; i <= scan; ++i) {
        const double d = 0.5 * we * static_cast<double>(i) / scan;
        if (f(d) < 0.0) {
            hi = d;
            lo = 0.5 * we * static_cast<double>(i - 1) / scan;
            break;
        }
    }
    if (hi == 0.0)
        throw NumericalError("resonant_delta_exact: no resonance bracket in (0, omega_e/2)");

    const double tol = 1e-12 * we;
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::abs(fm) < tol) return mid;
        if (fm > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    if (std::abs(f(mid)) < tol) return mid;
    throw NumericalError("resonant_delta_exact: bisection failed to reach tolerance");
}

}  // namespace ssefd
