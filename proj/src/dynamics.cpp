#include "ssefd/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ssefd/errors.hpp"
#include "ssefd/ode.hpp"
#include "ssefd/spectrum.hpp"

namespace ssefd {

void PropagationConfig::validate() const {
    if (!(t_end > 0.0))
        throw std::invalid_argument("PropagationConfig: t_end must be positive");
    if (output_samples < 2)
        throw std::invalid_argument("PropagationConfig: output_samples must be >= 2");
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw std::invalid_argument("PropagationConfig: tolerances must be positive");
}

std::vector<double> PropagationConfig::sample_times() const {
    std::vector<double> t(output_samples);
    for (int i = 0; i < output_samples; ++i)
        t[i] = t_end * static_cast<double>(i) / static_cast<double>(output_samples - 1);
    return t;
}

namespace {

Vec4 pack(const PureState2& s) {
    return {s.c1.real(), s.c1.imag(), s.c2.real(), s.c2.imag()};
}

PureState2 unpack(const Vec4& y) {
    return {{y[0], y[1]}, {y[2], y[3]}};
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

Trajectory propagate_lab(const TwoLevelSystem& sys, const DriveField& drive,
                         const PureState2& init, const PropagationConfig& cfg,
                         const PhysicalConstants& c) {
    sys.validate();
    drive.validate();
    cfg.validate();
    if (cfg.frame != Frame::lab_eq3)
        throw std::invalid_argument("propagate_lab: cfg.frame must be lab_eq3");
    if (std::abs(init.norm_sq() - 1.0) > 1e-9)
        throw std::invalid_argument("propagate_lab: init state must be normalized");

    const auto coup = drive_couplings(sys, drive, c);
    const double half_we = 0.5 * sys.omega_e;
    const double two_rabi = 2.0 * coup.omega_rabi;
    const double two_stark = 2.0 * coup.omega_stark;
    const double wl = drive.omega_l;
    const double phi = drive.phase;

    // i dc/dt = (H/hbar) c with
    //   H11/hbar = -omega_e/2 + 2 stark cos(theta),  H22 = -H11,
    //   H12/hbar = H21/hbar = -2 rabi cos(theta),    theta = omega_l t + phi.
    const auto rhs = [&](double t, const Vec4& y, Vec4& dy) {
        const double cth = std::cos(wl * t + phi);
        const double a = -half_we + two_stark * cth;  // diagonal for |1>
        const double g = -two_rabi * cth;
        // c1 = y0 + i y1, c2 = y2 + i y3; dc1/dt = -i(a c1 + g c2), dc2/dt = -i(g c1 - a c2)
        dy[0] = a * y[1] + g * y[3];
        dy[1] = -a * y[0] - g * y[2];
        dy[2] = g * y[1] - a * y[3];
        dy[3] = -g * y[0] + a * y[2];
    };

    const std::vector<double> ts = cfg.sample_times();
    Trajectory traj;
    traj.times = ts;
    traj.rho22.resize(ts.size());
    traj.states.resize(ts.size());

    OdeOptions opt{cfg.rel_tol, cfg.abs_tol};
    integrate_dopri5(rhs, pack(init), 0.0, cfg.t_end, opt, ts,
                     [&](std::size_t i, double, const Vec4& y) {
                         const PureState2 s = unpack(y);
                         traj.states[i] = s;
                         traj.rho22[i] = clamp01(std::norm(s.c2));
                         traj.max_norm_drift =
                             std::max(traj.max_norm_drift, std::abs(s.norm_sq() - 1.0));
                     });

    // Hard failure only on drift far beyond what the tolerance should give.
    const double budget = std::max(1e-9, 1000.0 * cfg.rel_tol);
    if (traj.max_norm_drift > budget)
        throw NumericalError("propagate_lab: norm drift " + fmt_sci(traj.max_norm_drift) +
                             " exceeds budget");
    return traj;
}

Trajectory propagate_effective(const EffectiveParams& params, double phase_phi,
                               const PureState2& init, const PropagationConfig& cfg) {
    cfg.validate();
    if (cfg.frame == Frame::lab_eq3)
        throw std::invalid_argument("propagate_effective: cfg.frame must be an effective frame");
    if (std::abs(init.norm_sq() - 1.0) > 1e-9)
        throw std::invalid_argument("propagate_effective: init state must be normalized");

    // H/hbar = [[-d, w], [conj(w), d]] with
    //   resonant frame:        d = (omega_e - omega_l)/2, w = -rabi e^{i phi}
    //   second-harmonic frame: d = delta_prime/2,         w = -rabi_2w e^{i 2 phi}
    double d, wmod, warg;
    if (cfg.frame == Frame::effective_HR_eq6) {
        d = 0.5 * (params.omega_e - params.omega_l);
        wmod = params.omega_rabi;
        warg = phase_phi;
    } else {
        d = 0.5 * params.delta_prime;
        wmod = params.omega_rabi_2w;
        warg = 2.0 * phase_phi;
    }
    const std::complex<double> w = -wmod * std::complex<double>(std::cos(warg), std::sin(warg));
    const double omega_eff = std::sqrt(d * d + wmod * wmod);

    const std::vector<double> ts = cfg.sample_times();
    Trajectory traj;
    traj.times = ts;
    traj.rho22.resize(ts.size());
    traj.states.resize(ts.size());

    // (H/hbar)^2 = omega_eff^2 I, so U(t) = cos(omega_eff t) I - i sin(omega_eff t)/omega_eff H/hbar.
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double t = ts[i];
        std::complex<double> u11, u12, u21, u22;
        if (omega_eff == 0.0) {
            u11 = u22 = 1.0;
            u12 = u21 = 0.0;
        } else {
            const double cs = std::cos(omega_eff * t);
            const double sn = std::sin(omega_eff * t) / omega_eff;
            const std::complex<double> im(0.0, 1.0);
            u11 = cs - im * sn * (-d);
            u12 = -im * sn * w;
            u21 = -im * sn * std::conj(w);
            u22 = cs - im * sn * d;
        }
        PureState2 s;
        s.c1 = u11 * init.c1 + u12 * init.c2;
        s.c2 = u21 * init.c1 + u22 * init.c2;
        traj.states[i] = s;
        traj.rho22[i] = clamp01(std::norm(s.c2));
        traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(s.norm_sq() - 1.0));
    }
    return traj;
}

ComparisonReport compare_exact_vs_effective(const TwoLevelSystem& sys, const DriveField& drive,
                                            const PropagationConfig& cfg,
                                            const PhysicalConstants& c) {
    const EffectiveParams params = derive_drive_params(sys, drive, c);

    PropagationConfig lab_cfg = cfg;
    lab_cfg.frame = Frame::lab_eq3;
    const Trajectory exact = propagate_lab(sys, drive, PureState2::ground(), lab_cfg, c);

    PropagationConfig eff_cfg = cfg;
    eff_cfg.frame = Frame::effective_HL_eq8;
    const Trajectory eff =
        propagate_effective(params, drive.phase, PureState2::ground(), eff_cfg);

    ComparisonReport rep;
    rep.xi = params.xi();
    if (rep.xi >= 0.1)
        rep.warning = "weak-drive regime violated: xi = " + fmt_sci(rep.xi) + " >= 1/10";

    double eff_max = 0.0;
    for (std::size_t i = 0; i < exact.rho22.size(); ++i) {
        rep.max_abs_gap = std::max(rep.max_abs_gap, std::abs(exact.rho22[i] - eff.rho22[i]));
        eff_max = std::max(eff_max, eff.rho22[i]);
    }

    // Frequency extraction is meaningless when the effective trajectory is
    // flat (no second-harmonic coupling).
    if (eff_max > 1e-9) {
        const double dt = exact.times[1] - exact.times[0];
        rep.freq_exact = dominant_frequency(exact.rho22, dt);
        rep.freq_effective = dominant_frequency(eff.rho22, dt);
        rep.rel_freq_mismatch =
            std::abs(rep.freq_exact - rep.freq_effective) / rep.freq_effective;
    }
    return rep;
}

}  // namespace ssefd
