// Acceptance suite: end-to-end checks of the frequency-doubling simulator.
// Each criterion prints one [PASS]/[FAIL] line; the process exits nonzero if
// any criterion fails.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "harness/config.hpp"
#include "harness/runner.hpp"
#include "ssefd/dynamics.hpp"
#include "ssefd/hydrogenic.hpp"
#include "ssefd/lindblad.hpp"
#include "ssefd/radiation.hpp"
#include "ssefd/spectrum.hpp"

using namespace ssefd;
using harness::parse_config;
using harness::preset_text;
using harness::resolve;
using harness::ResolvedScenario;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << detail
              << std::endl;
    if (!ok) ++g_failures;
}

bool close_rel(double value, double target, double tol) {
    return std::abs(value - target) <= tol * std::abs(target);
}

// 1. Derived parameters at the working point.
void criterion_effective_params() {
    const ResolvedScenario r = resolve(parse_config(preset_text("fig1a")));
    const bool ok = close_rel(r.params.omega_rabi, 4.3e9, 0.05) &&
                    close_rel(r.params.omega_stark, 10e9, 0.05) &&
                    close_rel(r.params.omega_rabi_2w, 0.8e9, 0.10);
    report(1, ok,
           "effective params: rabi " + harness::fmt(r.params.omega_rabi) + ", stark " +
               harness::fmt(r.params.omega_stark) + ", rabi_2w " +
               harness::fmt(r.params.omega_rabi_2w) + " rad/s (targets 4.3e9/1e10/8e8)");
}

// 2. Full-contrast oscillation at half the transition frequency.
void criterion_like_rabi() {
    const ResolvedScenario r = resolve(parse_config(preset_text("fig1a")));
    const Trajectory exact =
        propagate_lab(r.sys, r.drive, PureState2::ground(), r.prop, r.constants);

    PropagationConfig eff_cfg = r.prop;
    eff_cfg.frame = Frame::effective_HL_eq8;
    const Trajectory eff =
        propagate_effective(r.params, r.drive.phase, PureState2::ground(), eff_cfg);

    const double w2 = std::abs(r.params.omega_rabi_2w);
    const double envelope_period = std::numbers::pi / w2;

    double first_max = 0.0;
    double max_gap_2p = 0.0;
    for (std::size_t i = 0; i < exact.times.size(); ++i) {
        if (exact.times[i] <= envelope_period) first_max = std::max(first_max, exact.rho22[i]);
        if (exact.times[i] <= 2.0 * envelope_period)
            max_gap_2p = std::max(max_gap_2p, std::abs(exact.rho22[i] - eff.rho22[i]));
    }

    const double dt = exact.times[1] - exact.times[0];
    const double f_exact = dominant_frequency(exact.rho22, dt);
    const double f_eff = dominant_frequency(eff.rho22, dt);
    const double mismatch = std::abs(f_exact - f_eff) / f_eff;

    const bool ok = first_max > 0.9 && mismatch < 0.15 && max_gap_2p < 0.15;
    report(2, ok,
           "like-Rabi: first max " + harness::fmt(first_max) + " (> 0.9), envelope frequency "
               "mismatch " +
               harness::fmt(mismatch) + " (< 0.15), 2-period gap " + harness::fmt(max_gap_2p) +
               " (< 0.15)");
}

// 3. The effective description converges as the drive weakens.
void criterion_rwa_convergence() {
    std::vector<double> gaps;
    for (double scale : {1.0, 0.5, 0.25}) {
        std::string text = preset_text("fig1a");
        const std::string key = "amplitude_v_per_cm = 15";
        text.replace(text.find(key), key.size(),
                     "amplitude_v_per_cm = " + harness::fmt(15.0 * scale));
        const ResolvedScenario r = resolve(parse_config(text));

        PropagationConfig cfg = r.prop;
        cfg.t_end = 2.0 * std::numbers::pi / std::abs(r.params.omega_rabi_2w);
        cfg.output_samples = 2001;
        const ComparisonReport rep =
            compare_exact_vs_effective(r.sys, r.drive, cfg, r.constants);
        gaps.push_back(rep.max_abs_gap);
    }
    const bool ok = gaps[1] < gaps[0] && gaps[2] < gaps[1];
    report(3, ok,
           "self-convergence: max gaps " + harness::fmt(gaps[0]) + " > " + harness::fmt(gaps[1]) +
               " > " + harness::fmt(gaps[2]) + " for E x {1, 1/2, 1/4}");
}

// 4. A parity-symmetric atom is not driven at this working point.
void criterion_natural_atom() {
    const ResolvedScenario r = resolve(parse_config(preset_text("natural-atom")));
    const Trajectory traj =
        propagate_lab(r.sys, r.drive, PureState2::ground(), r.prop, r.constants);
    double max_r = 0.0;
    for (double v : traj.rho22) max_r = std::max(max_r, v);
    report(4, max_r <= 0.012,
           "natural-atom null test: max rho22 " + harness::fmt(max_r) + " (<= 0.012)");
}

// 5. Damped oscillation, closed-form steady state, generator agreement.
void criterion_damped_steady() {
    const ResolvedScenario r = resolve(parse_config(preset_text("fig1b")));
    const DissipationRates rates = *r.rates;

    const MasterTrajectory eff =
        evolve_master(r.params, r.drive.phase, rates, DensityMatrix2::ground(), r.prop);
    const DensityMatrix2 ss = steady_state(r.params, rates, r.drive.phase);

    // Underdamped: several crossings of the steady value plus a clear overshoot.
    int crossings = 0;
    double first_max = 0.0;
    for (std::size_t i = 1; i < eff.rho22.size(); ++i) {
        if ((eff.rho22[i - 1] - ss.rho22) * (eff.rho22[i] - ss.rho22) < 0.0) ++crossings;
        if (eff.times[i] < std::numbers::pi / r.params.omega_rabi_2w)
            first_max = std::max(first_max, eff.rho22[i]);
    }
    const bool underdamped = crossings >= 4 && first_max > 1.5 * ss.rho22;

    const auto longtime = steady_vs_longtime(r.params, r.drive.phase, rates, r.prop);

    PropagationConfig lab_cfg = r.prop;
    lab_cfg.frame = Frame::lab_eq3;
    const MasterTrajectory lab =
        evolve_master(r.sys, r.drive, rates, DensityMatrix2::ground(), lab_cfg, r.constants);

    // Strip the drive-frequency wiggles, then compare the decaying envelopes
    // (sliding hulls) of the two damped oscillations.
    const double dt = r.prop.t_end / (r.prop.output_samples - 1);
    const int wc = std::max(
        1, static_cast<int>(std::round(2.0 * std::numbers::pi / r.drive.omega_l / dt)));
    const int we =
        static_cast<int>(std::round(0.5 * std::numbers::pi / r.params.omega_rabi_2w / dt));
    const auto lab_s = boxcar_smooth(lab.rho22, wc);
    const auto eff_s = boxcar_smooth(eff.rho22, wc);
    double env_gap = 0.0;
    for (bool upper : {false, true}) {
        const auto a = sliding_extremum(lab_s, we, upper);
        const auto b = sliding_extremum(eff_s, we, upper);
        for (std::size_t i = 0; i < a.size(); ++i)
            env_gap = std::max(env_gap, std::abs(a[i] - b[i]));
    }

    const bool ok = underdamped && longtime.max_abs_diff < 1e-6 && env_gap < 0.05;
    report(5, ok,
           "damped oscillation: " + std::to_string(crossings) + " steady-value crossings, "
               "long-time diff " +
               harness::fmt(longtime.max_abs_diff) + " (< 1e-6), generator envelope gap " +
               harness::fmt(env_gap) + " (< 0.05)");
}

// 6. Lorentzian lineshape family.
void criterion_lineshape() {
    const double K = 1e8;
    const DissipationRates rates{K, K};
    EffectiveParams p;
    p.omega_e = 220e9;
    p.omega_l = 110e9;

    bool even = true, centered = true, ordered = true, approx_ok = true;
    double peak01 = 0.0;
    std::vector<IntensityCurve> curves;
    for (double ratio : {0.1, 0.2, 0.3}) {
        p.omega_rabi_2w = ratio * K;
        p.delta_prime = 0.0;
        curves.push_back(intensity_lorentzian(p, rates, 5.0, 201));
    }
    for (const auto& c : curves) {
        const std::size_t n = c.intensity_exact.size();
        const std::size_t mid = n / 2;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(c.intensity_exact[i] - c.intensity_exact[n - 1 - i]) >
                1e-9 * c.intensity_exact[mid])
                even = false;
            if (c.intensity_exact[i] > c.intensity_exact[mid] * (1.0 + 1e-12)) centered = false;
        }
    }
    for (std::size_t i = 0; i < curves[0].intensity_exact.size(); ++i) {
        if (!(curves[0].intensity_exact[i] < curves[1].intensity_exact[i] &&
              curves[1].intensity_exact[i] < curves[2].intensity_exact[i]))
            ordered = false;
    }
    peak01 = curves[0].intensity_exact[curves[0].intensity_exact.size() / 2];
    for (std::size_t i = 0; i < curves[0].intensity_exact.size(); ++i) {
        if (std::abs(curves[0].intensity_approx[i] - curves[0].intensity_exact[i]) >
            0.01 * curves[0].intensity_exact[i])
            approx_ok = false;
    }

    const bool peak_ok = close_rel(peak01, 9.26e-3, 0.01);
    const bool ok = even && centered && ordered && peak_ok && approx_ok;
    report(6, ok,
           "lineshape: even " + std::string(even ? "yes" : "NO") + ", centered " +
               (centered ? "yes" : "NO") + ", ordered " + (ordered ? "yes" : "NO") +
               ", 0.1-peak " + harness::fmt(peak01) + " (9.26e-3 +- 1%), weak-drive form "
               "within 1%: " +
               (approx_ok ? "yes" : "NO"));
}

// 7. Frequency-doubled line in the dipole spectrum, absent for the control.
void criterion_spectrum() {
    const ResolvedScenario broken = resolve(parse_config(preset_text("fig1b")));
    const DissipationRates rates = *broken.rates;

    PropagationConfig cfg;
    cfg.t_end = 44.0 * std::numbers::pi / std::abs(broken.params.omega_rabi_2w);
    const double dt = 2.0 * std::numbers::pi / (16.0 * broken.drive.omega_l);
    cfg.output_samples = static_cast<int>(std::ceil(cfg.t_end / dt)) + 1;

    const SpectrumReport rep =
        spectrum_from_dynamics(broken.sys, broken.drive, rates, cfg, broken.constants);

    TwoLevelSystem natural = broken.sys;
    natural.z22 = natural.z11;
    const SpectrumReport ctrl =
        spectrum_from_dynamics(natural, broken.drive, rates, cfg, broken.constants);

    const double offset = std::abs(rep.dominant_omega - rep.omega_2wl);
    const double ratio = rep.power_at_2wl / std::max(ctrl.power_at_2wl, 1e-300);
    const double db = 10.0 * std::log10(ratio);

    const bool ok = offset <= rep.bin_width && db >= 20.0;
    report(7, ok,
           "spectrum: dominant peak offset from 2 omega_l " +
               harness::fmt(offset / rep.bin_width) + " bins (<= 1), contrast over the "
               "natural atom " +
               harness::fmt(db) + " dB (>= 20)");
}

// 8. First-principles hydrogenic values.
void criterion_hydrogenic() {
    const PhysicalConstants c = PhysicalConstants::liquid_helium();
    const double rb = c.bohr_rB;

    const double z11 = dipole_matrix_element(1, 1, c);
    const double z22 = dipole_matrix_element(2, 2, c);
    const double z12 = std::abs(dipole_matrix_element(1, 2, c));
    const double z12_exact = 32.0 * std::numbers::sqrt2 / 81.0 * rb;
    const bool quad_ok = std::abs(z11 - 1.5 * rb) <= 1e-8 * 1.5 * rb &&
                         std::abs(z22 - 6.0 * rb) <= 1e-8 * 6.0 * rb &&
                         std::abs(z12 - z12_exact) <= 1e-8 * z12_exact;

    const SurfaceStateBasis basis = SurfaceStateBasis::standard(3, c);
    const EigenSolution sol = grid_eigensolve(basis, c);
    bool eig_ok = true;
    for (int n = 1; n <= 3; ++n)
        if (!close_rel(sol.energies[n - 1], analytic_energy(n, c), 1e-3)) eig_ok = false;

    const StarkSlopeResult slope = stark_slope(SurfaceStateBasis::standard(2, c), 25.0, c);
    const bool slope_ok = close_rel(slope.slope_hz_per_v_cm, 0.8e9, 0.10);

    report(8, quad_ok && eig_ok && slope_ok,
           "hydrogenic: quadrature to 1e-8 " + std::string(quad_ok ? "yes" : "NO") +
               ", spectrum to 0.1% " + (eig_ok ? "yes" : "NO") + ", Stark slope " +
               harness::fmt(slope.slope_hz_per_v_cm * 1e-9) + " GHz/(V/cm) (0.8 +- 10%)");
}

// 9. Property suites: conservation laws and sweep determinism.
void criterion_properties() {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> upos(0.0, 2.0);
    std::uniform_real_distribution<double> udet(-3.0, 3.0);
    std::uniform_real_distribution<double> uphase(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> upop(0.0, 1.0);

    bool lindblad_ok = true;
    for (int trial = 0; trial < 10; ++trial) {
        const double K0 = 1e8;
        EffectiveParams p;
        p.omega_e = 220e9;
        p.omega_l = 110e9;
        p.omega_rabi_2w = upos(rng) * K0;
        p.delta_prime = udet(rng) * K0;
        const DissipationRates rates{upos(rng) * K0, upos(rng) * K0};

        DensityMatrix2 init;
        init.rho22 = upop(rng);
        init.rho11 = 1.0 - init.rho22;
        const double a = uphase(rng);
        const double rmax = std::sqrt(init.rho11 * init.rho22);
        init.rho21 = 0.9 * rmax * std::complex<double>(std::cos(a), std::sin(a));

        PropagationConfig cfg;
        cfg.t_end = 50e-9;
        cfg.output_samples = 501;
        const MasterTrajectory traj = evolve_master(p, uphase(rng), rates, init, cfg);
        if (traj.max_trace_drift > 1e-9 || traj.min_eigenvalue < -1e-9) lindblad_ok = false;
    }

    bool coherent_ok = true;
    const PhysicalConstants consts = PhysicalConstants::liquid_helium();
    std::uniform_real_distribution<double> uwe(50e9, 400e9);
    std::uniform_real_distribution<double> uamp(0.0, 3000.0);
    std::uniform_real_distribution<double> ufrac(0.3, 0.7);
    for (int trial = 0; trial < 6; ++trial) {
        TwoLevelSystem sys;
        sys.omega_e = uwe(rng);
        sys.z11 = 1.5 * consts.bohr_rB;
        sys.z22 = sys.z11 + 2.3 * consts.bohr_rB;
        sys.z12 = 0.5 * consts.bohr_rB;
        DriveField drive;
        drive.amplitude = uamp(rng);
        drive.omega_l = ufrac(rng) * sys.omega_e;
        drive.phase = uphase(rng);
        PropagationConfig cfg;
        cfg.t_end = 5e-9;
        cfg.output_samples = 201;
        const Trajectory traj = propagate_lab(sys, drive, PureState2::ground(), cfg, consts);
        if (traj.max_norm_drift > 1e-9) coherent_ok = false;
    }

    const auto cfg = parse_config(preset_text("fig2"));
    const bool sweep_ok = harness::sweep_to_csv(cfg, 1) == harness::sweep_to_csv(cfg, 8);

    report(9, lindblad_ok && coherent_ok && sweep_ok,
           std::string("properties: trace/positivity to 1e-9 ") +
               (lindblad_ok ? "yes" : "NO") + ", unitarity to 1e-9 " +
               (coherent_ok ? "yes" : "NO") + ", sweep byte-identical across workers " +
               (sweep_ok ? "yes" : "NO"));
}

}  // namespace

int main() {
    criterion_effective_params();
    criterion_like_rabi();
    criterion_rwa_convergence();
    criterion_natural_atom();
    criterion_damped_steady();
    criterion_lineshape();
    criterion_spectrum();
    criterion_hydrogenic();
    criterion_properties();

    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all acceptance criteria passed" << std::endl;
    return 0;
}
