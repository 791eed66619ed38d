#include "harness/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

#include "json.hpp"
#include "ssefd/errors.hpp"
#include "ssefd/hydrogenic.hpp"
#include "ssefd/radiation.hpp"

namespace ssefd::harness {

namespace fs = std::filesystem;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void atomic_write(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw ConfigError("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

// Run manifest written next to every output set; embeds the exact config so
// a run can be reproduced bit-identically.
struct ManifestWriter {
    const ScenarioConfig& cfg;
    fs::path out_dir;
    std::string command;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    void finish(const EffectiveParams* params) const {
        nlohmann::json j;
        j["tool"] = "ssefd";
        j["version"] = kToolVersion;
        j["command"] = command;
        j["config"] = cfg.source_text;
        if (params) {
            j["derived_params"] = {{"omega_rabi_rad_s", params->omega_rabi},
                                   {"omega_stark_rad_s", params->omega_stark},
                                   {"delta_rad_s", params->delta},
                                   {"nu_rad_s", params->nu},
                                   {"omega_rabi_2w_rad_s", params->omega_rabi_2w},
                                   {"delta_prime_rad_s", params->delta_prime},
                                   {"omega_l_rad_s", params->omega_l},
                                   {"xi", params->xi()}};
        } else {
            j["derived_params"] = nullptr;
        }
        j["outputs"] = outputs;
        j["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
        atomic_write(out_dir / "manifest.json", j.dump(2) + "\n");
    }
};

void ensure_dir(const fs::path& out) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw ConfigError("cannot create output directory " + out.string());
}

std::string pure_trajectory_csv(const Trajectory& traj, bool with_state) {
    std::ostringstream os;
    os << (with_state ? "t_ns,rho22,re_c1,im_c1,re_c2,im_c2\n" : "t_ns,rho22\n");
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        os << fmt(traj.times[i] * 1e9) << ',' << fmt(traj.rho22[i]);
        if (with_state) {
            const auto& s = traj.states[i];
            os << ',' << fmt(s.c1.real()) << ',' << fmt(s.c1.imag()) << ',' << fmt(s.c2.real())
               << ',' << fmt(s.c2.imag());
        }
        os << '\n';
    }
    return os.str();
}

std::string master_trajectory_csv(const MasterTrajectory& traj) {
    std::ostringstream os;
    os << "t_ns,rho11,rho22,re_rho21,im_rho21\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        os << fmt(traj.times[i] * 1e9) << ',' << fmt(traj.rho11[i]) << ',' << fmt(traj.rho22[i])
           << ',' << fmt(traj.rho21[i].real()) << ',' << fmt(traj.rho21[i].imag()) << '\n';
    return os.str();
}

DissipationRates require_rates(const ResolvedScenario& r, const char* cmd) {
    if (!r.rates)
        throw ConfigError(std::string(cmd) + ": the config has no [rates] section");
    return *r.rates;
}

// Ratio-mode parameters for the steady-state family: the coupling is given
// as omega_2w_over_K instead of being derived from the drive.
EffectiveParams steady_params(const ScenarioConfig& cfg, const ResolvedScenario& r,
                              const DissipationRates& rates) {
    EffectiveParams p = r.params;
    if (cfg.omega_2w_over_K > 0.0) {
        p.omega_rabi_2w = cfg.omega_2w_over_K * rates.K();
        p.delta_prime = 0.0;
    }
    return p;
}

}  // namespace

std::string params_report(const ScenarioConfig& cfg) {
    const ResolvedScenario r = resolve(cfg);
    const EffectiveParams& p = r.params;
    const double exact = resonant_delta_exact(r.sys, p.omega_rabi);

    std::ostringstream os;
    os << "omega_e          = " << fmt(p.omega_e) << " rad/s\n"
       << "omega_l          = " << fmt(p.omega_l) << " rad/s"
       << (r.omega_l_auto ? "  (auto)\n" : "\n")
       << "omega_rabi       = " << fmt(p.omega_rabi) << " rad/s\n"
       << "omega_stark      = " << fmt(p.omega_stark) << " rad/s\n"
       << "delta            = " << fmt(p.delta) << " rad/s\n"
       << "delta_closed     = " << fmt(resonant_delta(r.sys, p.omega_rabi).delta) << " rad/s\n"
       << "delta_exact      = " << fmt(exact) << " rad/s\n"
       << "nu               = " << fmt(p.nu) << " rad/s\n"
       << "omega_rabi_2w    = " << fmt(p.omega_rabi_2w) << " rad/s\n"
       << "delta_prime      = " << fmt(p.delta_prime) << " rad/s\n"
       << "xi               = " << fmt(p.xi()) << "\n";
    if (p.xi() >= 0.1)
        os << "warning: weak-drive regime violated (xi >= 1/10); effective-frame "
              "results are unreliable\n";
    return os.str();
}

void cmd_rabi(const ScenarioConfig& cfg, const fs::path& out) {
    ensure_dir(out);
    ManifestWriter man{cfg, out, "rabi", {"trajectory_exact.csv", "trajectory_effective.csv"}};

    const ResolvedScenario r = resolve(cfg);
    PropagationConfig lab_cfg = r.prop;
    lab_cfg.frame = Frame::lab_eq3;
    const Trajectory exact = propagate_lab(r.sys, r.drive, PureState2::ground(), lab_cfg,
                                           r.constants);

    PropagationConfig eff_cfg = r.prop;
    eff_cfg.frame = Frame::effective_HL_eq8;
    const Trajectory eff =
        propagate_effective(r.params, r.drive.phase, PureState2::ground(), eff_cfg);

    atomic_write(out / "trajectory_exact.csv", pure_trajectory_csv(exact, true));
    atomic_write(out / "trajectory_effective.csv", pure_trajectory_csv(eff, false));
    man.finish(&r.params);
}

void cmd_lindblad(const ScenarioConfig& cfg, const fs::path& out) {
    ensure_dir(out);
    ManifestWriter man{cfg, out, "lindblad", {"trajectory_effective.csv", "trajectory_lab.csv"}};

    const ResolvedScenario r = resolve(cfg);
    const DissipationRates rates = require_rates(r, "lindblad");

    const MasterTrajectory eff = evolve_master(r.params, r.drive.phase, rates,
                                               DensityMatrix2::ground(), r.prop);
    PropagationConfig lab_cfg = r.prop;
    lab_cfg.frame = Frame::lab_eq3;
    const MasterTrajectory lab =
        evolve_master(r.sys, r.drive, rates, DensityMatrix2::ground(), lab_cfg, r.constants);

    atomic_write(out / "trajectory_effective.csv", master_trajectory_csv(eff));
    atomic_write(out / "trajectory_lab.csv", master_trajectory_csv(lab));
    man.finish(&r.params);
}

std::string cmd_steady(const ScenarioConfig& cfg, const fs::path& out) {
    const ResolvedScenario r = resolve(cfg);
    const DissipationRates rates = require_rates(r, "steady");
    const EffectiveParams p = steady_params(cfg, r, rates);

    const DensityMatrix2 ss = steady_state(p, rates, r.drive.phase);
    const PolarizationWave wave = polarization_wave(r.sys, ss, r.drive, r.constants);

    std::ostringstream rep;
    rep << "omega_rabi_2w_rad_s = " << fmt(p.omega_rabi_2w) << "\n"
        << "delta_prime_rad_s = " << fmt(p.delta_prime) << "\n"
        << "Gamma_rad_s = " << fmt(rates.Gamma) << "\n"
        << "gamma_rad_s = " << fmt(rates.gamma) << "\n"
        << "K_rad_s = " << fmt(rates.K()) << "\n"
        << "rho11 = " << fmt(ss.rho11) << "\n"
        << "rho22 = " << fmt(ss.rho22) << "\n"
        << "re_rho21 = " << fmt(ss.rho21.real()) << "\n"
        << "im_rho21 = " << fmt(ss.rho21.imag()) << "\n"
        << "abs_rho21_sq = " << fmt(std::norm(ss.rho21)) << "\n"
        << "polarization_amplitude_Cm = " << fmt(wave.amplitude) << "\n"
        << "polarization_phase_rad = " << fmt(wave.phase_theta) << "\n"
        << "carrier_rad_s = " << fmt(wave.carrier) << "\n"
        << "static_dipole_Cm = " << fmt(wave.static_dipole) << "\n";

    if (!out.empty()) {
        ensure_dir(out);
        ManifestWriter man{cfg, out, "steady", {"steady.txt", "intensity.csv"}};

        const IntensityCurve curve = intensity_lorentzian(p, rates, cfg.half_range_over_K,
                                                          cfg.curve_samples, r.drive.phase);
        std::ostringstream csv;
        csv << "delta_prime_over_K,intensity_exact,intensity_eq15\n";
        for (std::size_t i = 0; i < curve.detuning_over_K.size(); ++i)
            csv << fmt(curve.detuning_over_K[i]) << ',' << fmt(curve.intensity_exact[i]) << ','
                << fmt(curve.intensity_approx[i]) << '\n';

        atomic_write(out / "steady.txt", rep.str());
        atomic_write(out / "intensity.csv", csv.str());
        man.finish(&p);
    }
    return rep.str();
}

std::string cmd_spectrum(const ScenarioConfig& cfg, const fs::path& out) {
    const ResolvedScenario r = resolve(cfg);

    PropagationConfig run = r.prop;
    run.frame = Frame::lab_eq3;
    if (cfg.spectrum_t_end_ns > 0.0) {
        run.t_end = cfg.spectrum_t_end_ns * 1e-9;
    } else if (r.params.omega_rabi_2w != 0.0) {
        // Tail window (half the run) of at least 22 envelope periods.
        run.t_end = 44.0 * std::numbers::pi / std::abs(r.params.omega_rabi_2w);
    } else {
        run.t_end = 160e-9;
    }
    if (cfg.spectrum_samples > 0) {
        run.output_samples = cfg.spectrum_samples;
    } else {
        // Sample at 16 omega_l: Nyquist comfortably above the doubled line.
        const double dt = 2.0 * std::numbers::pi / (16.0 * r.drive.omega_l);
        run.output_samples = static_cast<int>(std::ceil(run.t_end / dt)) + 1;
    }

    const SpectrumReport rep = spectrum_from_dynamics(r.sys, r.drive, r.rates, run, r.constants);

    std::ostringstream txt;
    txt << "omega_2wl_rad_s = " << fmt(rep.omega_2wl) << "\n"
        << "dominant_omega_rad_s = " << fmt(rep.dominant_omega) << "\n"
        << "offset_bins = " << fmt((rep.dominant_omega - rep.omega_2wl) / rep.bin_width) << "\n"
        << "bin_width_rad_s = " << fmt(rep.bin_width) << "\n"
        << "power_at_2wl = " << fmt(rep.power_at_2wl) << "\n"
        << "analysis_t_start_ns = " << fmt(rep.analysis_t_start * 1e9) << "\n";
    for (std::size_t i = 0; i < rep.peaks.size() && i < 8; ++i)
        txt << "peak_" << i << " = " << fmt(rep.peaks[i].omega) << " rad/s, power "
            << fmt(rep.peaks[i].power) << "\n";

    if (!out.empty()) {
        ensure_dir(out);
        ManifestWriter man{cfg, out, "spectrum", {"spectrum.csv", "spectrum_report.txt"}};
        std::ostringstream csv;
        csv << "omega_rad_per_s,power_rel\n";
        for (std::size_t k = 0; k < rep.spectrum.omega.size(); ++k)
            csv << fmt(rep.spectrum.omega[k]) << ',' << fmt(rep.spectrum.power[k]) << '\n';
        atomic_write(out / "spectrum.csv", csv.str());
        atomic_write(out / "spectrum_report.txt", txt.str());
        man.finish(&r.params);
    }
    return txt.str();
}

std::string cmd_hydrogenic(const ScenarioConfig& cfg, const fs::path& out) {
    const PhysicalConstants c = PhysicalConstants::liquid_helium();
    const double rb = c.bohr_rB;

    SurfaceStateBasis basis = SurfaceStateBasis::standard(cfg.n_max, c);
    basis.holding_field = cfg.holding_field_v_per_cm * 100.0;
    const EigenSolution sol = grid_eigensolve(basis, c);

    const double q11 = dipole_matrix_element(1, 1, c);
    const double q22 = dipole_matrix_element(2, 2, c);
    const double q12 = dipole_matrix_element(1, 2, c);
    const StarkSlopeResult slope = stark_slope(basis, cfg.probe_field_v_per_cm * 100.0, c);

    std::ostringstream rep;
    rep << "rydberg_R_rad_s = " << fmt(c.rydberg_R) << "\n"
        << "bohr_rB_m = " << fmt(rb) << "\n";
    for (std::size_t k = 0; k < sol.energies.size(); ++k) {
        rep << "E" << (k + 1) << "_rad_s = " << fmt(sol.energies[k]) << "\n"
            << "E" << (k + 1) << "_analytic_rad_s = "
            << fmt(analytic_energy(static_cast<int>(k) + 1, c)) << "\n";
    }
    rep << "z11_quadrature_rb = " << fmt(q11 / rb) << "\n"
        << "z22_quadrature_rb = " << fmt(q22 / rb) << "\n"
        << "abs_z12_quadrature_rb = " << fmt(std::abs(q12) / rb) << "\n"
        << "stark_slope_GHz_per_V_cm = " << fmt(slope.slope_hz_per_v_cm * 1e-9) << "\n"
        << "stark_slope_perturbative_GHz_per_V_cm = "
        << fmt(slope.perturbative_hz_per_v_cm * 1e-9) << "\n";
    if (!slope.warning.empty()) rep << "warning = " << slope.warning << "\n";

    if (!out.empty()) {
        ensure_dir(out);
        ManifestWriter man{cfg, out, "hydrogenic", {"wavefunctions.csv", "hydrogenic_report.txt"}};
        std::ostringstream csv;
        csv << "z_m";
        for (std::size_t k = 0; k < sol.wavefunctions.size(); ++k) csv << ",psi_" << (k + 1);
        csv << '\n';
        for (std::size_t i = 0; i < basis.grid.size(); ++i) {
            csv << fmt(basis.grid[i]);
            for (const auto& w : sol.wavefunctions) csv << ',' << fmt(w[i]);
            csv << '\n';
        }
        atomic_write(out / "wavefunctions.csv", csv.str());
        atomic_write(out / "hydrogenic_report.txt", rep.str());
        man.finish(nullptr);
    }
    return rep.str();
}

namespace {

struct SweepPoint {
    double value = 0.0;
    EffectiveParams params;
    bool have_params = false;
    double rho22_ss = 0.0;
    double abs_rho21_sq = 0.0;
    bool have_steady = false;
    std::string error;
};

SweepPoint compute_point(const ScenarioConfig& cfg, const ResolvedScenario& base, double value) {
    SweepPoint pt;
    pt.value = value;
    try {
        const std::string& axis = cfg.sweep->parameter;
        EffectiveParams p;
        std::optional<DissipationRates> rates = base.rates;

        if (axis == "delta_prime_over_K") {
            if (!rates) throw ConfigError("sweep over delta_prime_over_K needs [rates]");
            p = steady_params(cfg, base, *rates);
            p.delta_prime = value * rates->K();
        } else if (axis == "amplitude_v_per_cm") {
            DriveField d = base.drive;
            d.amplitude = value * 100.0;
            if (base.omega_l_auto) {
                const double rabi = drive_couplings(base.sys, d, base.constants).omega_rabi;
                d.omega_l = resonant_delta(base.sys, rabi).omega_l;
            }
            p = derive_drive_params(base.sys, d, base.constants);
        } else {  // omega_l_rad_s
            DriveField d = base.drive;
            d.omega_l = value;
            p = derive_drive_params(base.sys, d, base.constants);
        }
        pt.params = p;
        pt.have_params = true;

        if (rates && rates->Gamma > 0.0) {
            const DensityMatrix2 ss = steady_state(p, *rates, base.drive.phase);
            pt.rho22_ss = ss.rho22;
            pt.abs_rho21_sq = std::norm(ss.rho21);
            pt.have_steady = true;
        }
    } catch (const std::exception& e) {
        std::string msg = e.what();
        for (char& ch : msg)
            if (ch == ',' || ch == '\n') ch = ';';
        pt.error = msg;
    }
    return pt;
}

}  // namespace

std::string sweep_to_csv(const ScenarioConfig& cfg, int workers) {
    if (!cfg.sweep) throw ConfigError("sweep: the config has no [sweep] section");
    if (workers < 1) throw ConfigError("sweep: workers must be >= 1");
    const ResolvedScenario base = resolve(cfg);
    const auto& sw = *cfg.sweep;
    if (sw.parameter == "delta_prime_over_K" && !base.rates)
        throw ConfigError("sweep over delta_prime_over_K needs a [rates] section");

    std::vector<SweepPoint> points(sw.count);
    std::atomic<int> next{0};
    auto work = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= sw.count) return;
            const double value =
                sw.min + (sw.max - sw.min) * static_cast<double>(i) /
                             static_cast<double>(sw.count - 1);
            points[i] = compute_point(cfg, base, value);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::ostringstream os;
    os << "parameter,value,omega_rabi_rad_s,omega_stark_rad_s,delta_rad_s,nu_rad_s,"
          "omega_rabi_2w_rad_s,delta_prime_rad_s,rho22_ss,abs_rho21_sq,error\n";
    for (const auto& pt : points) {
        os << sw.parameter << ',' << fmt(pt.value) << ',';
        if (pt.have_params)
            os << fmt(pt.params.omega_rabi) << ',' << fmt(pt.params.omega_stark) << ','
               << fmt(pt.params.delta) << ',' << fmt(pt.params.nu) << ','
               << fmt(pt.params.omega_rabi_2w) << ',' << fmt(pt.params.delta_prime) << ',';
        else
            os << ",,,,,,";
        if (pt.have_steady)
            os << fmt(pt.rho22_ss) << ',' << fmt(pt.abs_rho21_sq) << ',';
        else
            os << ",,";
        os << pt.error << '\n';
    }
    return os.str();
}

void cmd_sweep(const ScenarioConfig& cfg, const fs::path& out, int workers) {
    ensure_dir(out);
    ManifestWriter man{cfg, out, "sweep", {"sweep.csv"}};
    atomic_write(out / "sweep.csv", sweep_to_csv(cfg, workers));
    const ResolvedScenario base = resolve(cfg);
    man.finish(&base.params);
}

}  // namespace ssefd::harness
