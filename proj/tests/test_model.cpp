#include <cmath>

#include "doctest.h"
#include "ssefd/errors.hpp"
#include "ssefd/model.hpp"

using namespace ssefd;

namespace {

const PhysicalConstants kConst = PhysicalConstants::liquid_helium();

TwoLevelSystem working_point() {
    TwoLevelSystem sys;
    sys.omega_e = 220e9;
    sys.z11 = 1.5 * kConst.bohr_rB;
    sys.z22 = sys.z11 + 2.3 * kConst.bohr_rB;
    sys.z12 = 0.5 * kConst.bohr_rB;
    return sys;
}

DriveField working_drive(double amplitude_v_per_cm = 15.0) {
    DriveField d;
    d.amplitude = amplitude_v_per_cm * 100.0;
    d.omega_l = 110e9;  // placeholder, overwritten where the resonance matters
    d.phase = 0.0;
    return d;
}

// Independent oracle: bisection on the untruncated shift balance, written out
// here so it cannot drift with the library implementation.
double bisect_resonance(double omega_e, double rabi) {
    auto f = [&](double d) {
        return 4.0 * rabi * rabi * (1.0 / (omega_e - d) + 1.0 / (3.0 * omega_e + d)) - d;
    };
    double lo = 0.0, hi = 0.45 * omega_e;
    REQUIRE(f(lo) >= 0.0);
    REQUIRE(f(hi) < 0.0);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("physical constants match the known surface-state scales") {
    kConst.validate();
    CHECK(kConst.bohr_rB == doctest::Approx(76e-10).epsilon(0.02));        // ~76 Angstrom
    CHECK(kConst.rydberg_R / (2 * M_PI) == doctest::Approx(0.16e12).epsilon(0.05));
    CHECK(kConst.lambda_image > 0.0);
}

TEST_CASE("derive_drive_params reproduces the working-point couplings") {
    const auto sys = working_point();
    auto drive = working_drive();
    const auto res = resonant_delta(sys, drive_couplings(sys, drive).omega_rabi);
    drive.omega_l = res.omega_l;

    const EffectiveParams p = derive_drive_params(sys, drive);
    CHECK(p.omega_rabi == doctest::Approx(4.3e9).epsilon(0.05));
    CHECK(p.omega_stark == doctest::Approx(10e9).epsilon(0.05));
    CHECK(p.omega_rabi_2w == doctest::Approx(0.8e9).epsilon(0.10));
    CHECK(p.delta == doctest::Approx(2.0 * drive.omega_l - sys.omega_e));
    CHECK(std::abs(p.delta_prime) < 1e-3 * p.omega_rabi_2w);
    CHECK(p.xi() < 0.1);
}

TEST_CASE("zero drive gives zero couplings") {
    const auto sys = working_point();
    auto drive = working_drive(0.0);
    const EffectiveParams p = derive_drive_params(sys, drive);
    CHECK(p.omega_rabi == 0.0);
    CHECK(p.omega_stark == 0.0);
    CHECK(p.omega_rabi_2w == 0.0);
}

TEST_CASE("symmetric dipoles give no Stark coupling") {
    auto sys = working_point();
    sys.z22 = sys.z11;
    const EffectiveParams p = derive_drive_params(sys, working_drive());
    CHECK(p.omega_stark == 0.0);
    CHECK(p.omega_rabi_2w == 0.0);
    CHECK(p.omega_rabi > 0.0);
}

TEST_CASE("coupling scaling: rabi linear in E, second-harmonic rabi quadratic") {
    const auto sys = working_point();
    auto d1 = working_drive(10.0);
    auto d2 = working_drive(20.0);
    const EffectiveParams p1 = derive_drive_params(sys, d1);
    const EffectiveParams p2 = derive_drive_params(sys, d2);
    CHECK(p2.omega_rabi == doctest::Approx(2.0 * p1.omega_rabi).epsilon(1e-14));
    CHECK(p2.omega_stark == doctest::Approx(2.0 * p1.omega_stark).epsilon(1e-14));
    // At fixed delta the second-harmonic coupling is rabi*stark, so x4.
    CHECK(p2.omega_rabi_2w / p1.omega_rabi_2w == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("derive_drive_params is a pure function") {
    const auto sys = working_point();
    const auto drive = working_drive();
    const EffectiveParams a = derive_drive_params(sys, drive);
    const EffectiveParams b = derive_drive_params(sys, drive);
    CHECK(a.omega_rabi == b.omega_rabi);
    CHECK(a.omega_stark == b.omega_stark);
    CHECK(a.nu == b.nu);
    CHECK(a.omega_rabi_2w == b.omega_rabi_2w);
    CHECK(a.delta_prime == b.delta_prime);
}

TEST_CASE("pole of the second-harmonic coupling is rejected") {
    const auto sys = working_point();
    auto drive = working_drive();
    drive.omega_l = sys.omega_e;  // delta = omega_e exactly
    CHECK_THROWS_AS(derive_drive_params(sys, drive), NumericalError);
}

TEST_CASE("resonant_delta closed form") {
    auto sys = working_point();

    SUBCASE("undriven limit") {
        const auto r = resonant_delta(sys, 0.0);
        CHECK(r.delta == 0.0);
        CHECK(r.omega_l == doctest::Approx(0.5 * sys.omega_e));
    }

    SUBCASE("working point value") {
        // 48*220*4.3^2/(9*220^2 - 32*4.3^2) Grad/s = 0.448852...
        const auto r = resonant_delta(sys, 4.3e9);
        CHECK(r.delta == doctest::Approx(0.44885211e9).epsilon(1e-5));
        CHECK(r.delta == 2.0 * r.omega_l - sys.omega_e);  // bit-exact identity
    }

    SUBCASE("too-strong drive is rejected") {
        CHECK_THROWS_AS(resonant_delta(sys, sys.omega_e), NumericalError);
    }
}

TEST_CASE("resonant_delta_exact agrees with the bisection oracle") {
    const auto sys = working_point();

    CHECK(resonant_delta_exact(sys, 0.0) == 0.0);

    const double d_lib = resonant_delta_exact(sys, 4.3e9);
    const double d_oracle = bisect_resonance(sys.omega_e, 4.3e9);
    // The library localizes the root to |nu - delta| < 1e-12 omega_e, i.e.
    // about 0.2 rad/s here.
    CHECK(std::abs(d_lib - d_oracle) < 2e-12 * sys.omega_e);

    // Within 1% of the truncated closed form at the working point.
    const double d_closed = resonant_delta(sys, 4.3e9).delta;
    CHECK(d_lib == doctest::Approx(d_closed).epsilon(0.01));

    // Residual below the advertised tolerance.
    CHECK(std::abs(level_shift_nu(sys.omega_e, 4.3e9, d_lib) - d_lib) < 1e-12 * sys.omega_e);
}

TEST_CASE("exact resonance increases monotonically with the drive") {
    const auto sys = working_point();
    double prev = 0.0;
    for (int i = 1; i <= 8; ++i) {
        const double rabi = sys.omega_e / 10.0 * i / 8.0;
        const double d = resonant_delta_exact(sys, rabi);
        CHECK(d > prev);
        prev = d;
    }
}

TEST_CASE("closed form and exact root agree to first order in (rabi/omega_e)^2") {
    const auto sys = working_point();
    // The gap between the truncated and exact resonance shrinks ~ (rabi/we)^4.
    const double r1 = 4.3e9, r2 = 4.3e9 / 2.0;
    const double gap1 = std::abs(resonant_delta(sys, r1).delta - resonant_delta_exact(sys, r1));
    const double gap2 = std::abs(resonant_delta(sys, r2).delta - resonant_delta_exact(sys, r2));
    CHECK(gap2 < gap1 / 8.0);
}

TEST_CASE("type invariants are enforced") {
    TwoLevelSystem sys = working_point();
    sys.z12 = 0.0;
    CHECK_THROWS_AS(sys.validate(), std::invalid_argument);

    DriveField d = working_drive();
    d.omega_l = 0.0;
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
    d = working_drive();
    d.amplitude = -1.0;
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}
