#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ssefd/dynamics.hpp"
#include "ssefd/errors.hpp"

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

DriveField resonant_2w_drive(const TwoLevelSystem& sys, double amplitude_v_per_cm) {
    DriveField d;
    d.amplitude = amplitude_v_per_cm * 100.0;
    d.omega_l = 1.0;  // filled below
    d.phase = 0.0;
    const double rabi = drive_couplings(sys, d).omega_rabi;
    d.omega_l = resonant_delta(sys, rabi).omega_l;
    return d;
}

}  // namespace

TEST_CASE("no coupling means no population transfer") {
    auto sys = working_point();
    DriveField drive;
    drive.amplitude = 0.0;
    drive.omega_l = sys.omega_e;
    PropagationConfig cfg;
    cfg.t_end = 2e-9;
    cfg.output_samples = 201;

    const Trajectory traj = propagate_lab(sys, drive, PureState2::ground(), cfg);
    for (double r : traj.rho22) CHECK(r == 0.0);
    CHECK(traj.max_norm_drift < 1e-9);
}

TEST_CASE("resonant weak drive follows the textbook Rabi envelope") {
    auto sys = working_point();
    DriveField drive;
    drive.amplitude = 0.15 * 100.0;  // 0.15 V/cm: deep weak-drive regime
    drive.omega_l = sys.omega_e;
    drive.phase = 0.0;

    const double rabi = drive_couplings(sys, drive).omega_rabi;
    PropagationConfig cfg;
    cfg.t_end = std::numbers::pi / rabi;  // one population period
    cfg.output_samples = 401;

    const Trajectory traj = propagate_lab(sys, drive, PureState2::ground(), cfg);
    double rms = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double ref = std::pow(std::sin(rabi * traj.times[i]), 2);
        rms += (traj.rho22[i] - ref) * (traj.rho22[i] - ref);
    }
    rms = std::sqrt(rms / traj.times.size());
    CHECK(rms < 0.02);
}

TEST_CASE("unitarity within 1e-9 at default tolerances") {
    const auto sys = working_point();
    const auto drive = resonant_2w_drive(sys, 15.0);
    PropagationConfig cfg;
    cfg.t_end = 20e-9;
    cfg.output_samples = 2001;

    const Trajectory traj = propagate_lab(sys, drive, PureState2::ground(), cfg);
    CHECK(traj.max_norm_drift < 1e-9);
}

TEST_CASE("halving rel_tol changes samples by less than 10x rel_tol") {
    const auto sys = working_point();
    const auto drive = resonant_2w_drive(sys, 15.0);
    // Short window: per-run error stays at the per-step scale the bound assumes.
    PropagationConfig cfg;
    cfg.t_end = 0.2e-9;
    cfg.output_samples = 101;
    cfg.rel_tol = 1e-9;
    cfg.abs_tol = 1e-12;

    const Trajectory a = propagate_lab(sys, drive, PureState2::ground(), cfg);
    cfg.rel_tol = 5e-10;
    const Trajectory b = propagate_lab(sys, drive, PureState2::ground(), cfg);
    double max_gap = 0.0;
    for (std::size_t i = 0; i < a.rho22.size(); ++i)
        max_gap = std::max(max_gap, std::abs(a.rho22[i] - b.rho22[i]));
    CHECK(max_gap < 10.0 * 1e-9);
}

TEST_CASE("second-harmonic frame closed form") {
    const auto sys = working_point();
    const auto drive = resonant_2w_drive(sys, 15.0);
    const EffectiveParams p = derive_drive_params(sys, drive);

    PropagationConfig cfg;
    cfg.t_end = 10e-9;
    cfg.output_samples = 1001;
    cfg.frame = Frame::effective_HL_eq8;

    SUBCASE("matches the generalized Rabi formula") {
        const Trajectory traj = propagate_effective(p, drive.phase, PureState2::ground(), cfg);
        const double w2 = p.omega_rabi_2w * p.omega_rabi_2w;
        const double eff = std::sqrt(w2 + 0.25 * p.delta_prime * p.delta_prime);
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            const double ref = (w2 / (eff * eff)) * std::pow(std::sin(eff * traj.times[i]), 2);
            CHECK(std::abs(traj.rho22[i] - ref) < 1e-10);
        }
    }

    SUBCASE("zero coupling keeps the ground state") {
        EffectiveParams natural = p;
        natural.omega_rabi_2w = 0.0;
        natural.delta_prime = 0.0;
        const Trajectory traj =
            propagate_effective(natural, drive.phase, PureState2::ground(), cfg);
        for (double r : traj.rho22) CHECK(r == 0.0);
    }

    SUBCASE("first maximum sits at pi/(2 W) on resonance") {
        EffectiveParams on_res = p;
        on_res.delta_prime = 0.0;
        PropagationConfig fine = cfg;
        fine.output_samples = 20001;
        const Trajectory traj =
            propagate_effective(on_res, drive.phase, PureState2::ground(), fine);
        // Search within the first envelope period; later maxima tie to 1e-16.
        const double period = std::numbers::pi / p.omega_rabi_2w;
        std::size_t imax = 0;
        for (std::size_t i = 0; i < traj.rho22.size() && traj.times[i] < period; ++i)
            if (traj.rho22[i] > traj.rho22[imax]) imax = i;
        const double t_expect = 0.5 * std::numbers::pi / p.omega_rabi_2w;
        const double dt = traj.times[1] - traj.times[0];
        CHECK(std::abs(traj.times[imax] - t_expect) <= dt);
        CHECK(traj.rho22[imax] == doctest::Approx(1.0).epsilon(1e-6));
    }

    SUBCASE("populations unchanged under phase shift by pi") {
        const Trajectory a = propagate_effective(p, 0.3, PureState2::ground(), cfg);
        const Trajectory b =
            propagate_effective(p, 0.3 + std::numbers::pi, PureState2::ground(), cfg);
        for (std::size_t i = 0; i < a.rho22.size(); ++i)
            CHECK(a.rho22[i] == doctest::Approx(b.rho22[i]).epsilon(1e-14));
    }
}

TEST_CASE("resonant frame reduces to the plain Rabi formula") {
    const auto sys = working_point();
    DriveField drive;
    drive.amplitude = 1500.0;
    drive.omega_l = sys.omega_e;  // resonant
    drive.phase = 0.7;
    // omega_l = omega_e sits on the documented pole of the two-photon
    // coupling, so assemble the parameters for the resonant frame directly.
    EffectiveParams p;
    p.omega_rabi = drive_couplings(sys, drive).omega_rabi;
    p.omega_e = sys.omega_e;
    p.omega_l = drive.omega_l;

    PropagationConfig cfg;
    cfg.t_end = 2.0 * std::numbers::pi / p.omega_rabi;
    cfg.output_samples = 501;
    cfg.frame = Frame::effective_HR_eq6;

    const Trajectory traj = propagate_effective(p, drive.phase, PureState2::ground(), cfg);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double ref = std::pow(std::sin(p.omega_rabi * traj.times[i]), 2);
        CHECK(std::abs(traj.rho22[i] - ref) < 1e-10);
    }
}

TEST_CASE("exact-vs-effective comparison at the working point") {
    const auto sys = working_point();
    const auto drive = resonant_2w_drive(sys, 15.0);
    const EffectiveParams p = derive_drive_params(sys, drive);
    PropagationConfig cfg;
    cfg.t_end = 2.0 * std::numbers::pi / p.omega_rabi_2w;  // two envelope periods
    cfg.output_samples = 4001;

    const ComparisonReport rep = compare_exact_vs_effective(sys, drive, cfg);
    CHECK(rep.xi < 0.1);
    CHECK(rep.warning.empty());
    CHECK(rep.rel_freq_mismatch < 0.15);
    CHECK(rep.max_abs_gap < 0.15);
}

TEST_CASE("effective description improves as the drive weakens") {
    const auto sys = working_point();
    double prev_gap = 1e9;
    for (double scale : {1.0, 0.5, 0.25}) {
        const auto drive = resonant_2w_drive(sys, 15.0 * scale);
        const EffectiveParams p = derive_drive_params(sys, drive);
        PropagationConfig cfg;
        cfg.t_end = 2.0 * std::numbers::pi / p.omega_rabi_2w;  // two envelope periods
        cfg.output_samples = 2001;
        const ComparisonReport rep = compare_exact_vs_effective(sys, drive, cfg);
        CHECK(rep.max_abs_gap < prev_gap);
        prev_gap = rep.max_abs_gap;
    }
}

TEST_CASE("natural atom is not driven by the far-detuned field") {
    auto sys = working_point();
    const auto drive = resonant_2w_drive(sys, 15.0);  // resolved for the broken system
    sys.z22 = sys.z11;                                // then switch the symmetry off
    PropagationConfig cfg;
    cfg.t_end = 20e-9;
    cfg.output_samples = 2001;

    const Trajectory traj = propagate_lab(sys, drive, PureState2::ground(), cfg);
    double max_r = 0.0;
    for (double r : traj.rho22) max_r = std::max(max_r, r);
    CHECK(max_r < 0.012);

    // The comparison report degrades gracefully for the flat effective case.
    const ComparisonReport rep = compare_exact_vs_effective(sys, drive, cfg);
    CHECK(rep.max_abs_gap == doctest::Approx(max_r).epsilon(1e-12));
    CHECK(rep.freq_effective == 0.0);
    CHECK(rep.rel_freq_mismatch == 0.0);
}

TEST_CASE("propagation input validation") {
    const auto sys = working_point();
    const auto drive = resonant_2w_drive(sys, 15.0);
    PropagationConfig cfg;
    cfg.t_end = 1e-9;
    cfg.output_samples = 1;
    CHECK_THROWS_AS(propagate_lab(sys, drive, PureState2::ground(), cfg),
                    std::invalid_argument);

    cfg.output_samples = 10;
    cfg.frame = Frame::effective_HL_eq8;
    CHECK_THROWS_AS(propagate_lab(sys, drive, PureState2::ground(), cfg),
                    std::invalid_argument);

    cfg.frame = Frame::lab_eq3;
    PureState2 bad;
    bad.c1 = 2.0;
    CHECK_THROWS_AS(propagate_lab(sys, drive, bad, cfg), std::invalid_argument);
}

TEST_CASE("randomized coherent runs preserve the norm") {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> uwe(50e9, 400e9);
    std::uniform_real_distribution<double> uamp(0.0, 3000.0);
    std::uniform_real_distribution<double> uphase(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> ufrac(0.3, 0.7);

    for (int trial = 0; trial < 8; ++trial) {
        TwoLevelSystem sys = working_point();
        sys.omega_e = uwe(rng);
        DriveField drive;
        drive.amplitude = uamp(rng);
        drive.omega_l = ufrac(rng) * sys.omega_e;
        drive.phase = uphase(rng);
        PropagationConfig cfg;
        cfg.t_end = 5e-9;
        cfg.output_samples = 301;

        const Trajectory traj = propagate_lab(sys, drive, PureState2::ground(), cfg);
        CHECK(traj.max_norm_drift < 1e-9);
        for (double r : traj.rho22) {
            CHECK(r >= 0.0);
            CHECK(r <= 1.0);
        }
    }
}
