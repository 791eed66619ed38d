#include "ssefd/radiation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ssefd/errors.hpp"

namespace ssefd {

PolarizationWave polarization_wave(const TwoLevelSystem& sys, const DensityMatrix2& steady,
                                   const DriveField& drive, const PhysicalConstants& c) {
    sys.validate();
    drive.validate();
    steady.validate();

    PolarizationWave w;
    w.carrier = 2.0 * drive.omega_l;
    w.amplitude = c.electron_charge * sys.z12 * std::abs(steady.rho21);
    w.phase_theta = (steady.rho21 == std::complex<double>(0.0, 0.0))
                        ? 0.0
                        : std::atan2(steady.rho21.imag(), steady.rho21.real()) +
                              2.0 * drive.phase;
    w.static_dipole =
        c.electron_charge * (steady.rho11 * sys.z11 + steady.rho22 * sys.z22);
    return w;
}

double intensity_lorentzian_approx(double omega_rabi_2w, double delta_prime,
                                   const DissipationRates& rates) {
    const double K = rates.K();
    if (!(K > 0.0) || !(rates.Gamma > 0.0))
        throw std::invalid_argument("intensity_lorentzian_approx: requires K > 0 and Gamma > 0");
    const double x = omega_rabi_2w / K;
    const double d = delta_prime / K;
    const double sat = 8.0 * omega_rabi_2w * omega_rabi_2w / (K * rates.Gamma);
    return x * x / (1.0 + d * d + sat);
}

IntensityCurve intensity_lorentzian(const EffectiveParams& params, const DissipationRates& rates,
                                    double half_range_over_K, int samples, double phase_phi) {
    rates.validate();
    if (samples < 2) throw std::invalid_argument("intensity_lorentzian: samples must be >= 2");
    if (!(half_range_over_K > 0.0))
        throw std::invalid_argument("intensity_lorentzian: range must be positive");
    const double K = rates.K();
    if (!(K > 0.0)) throw std::invalid_argument("intensity_lorentzian: requires K > 0");

    IntensityCurve curve;
    curve.detuning_over_K.resize(samples);
    curve.intensity_exact.resize(samples);
    curve.intensity_approx.resize(samples);
    for (int i = 0; i < samples; ++i) {
        const double x = -half_range_over_K +
                         2.0 * half_range_over_K * static_cast<double>(i) /
                             static_cast<double>(samples - 1);
        EffectiveParams p = params;
        p.delta_prime = x * K;
        const DensityMatrix2 ss = steady_state(p, rates, phase_phi);
        curve.detuning_over_K[i] = x;
        curve.intensity_exact[i] = std::norm(ss.rho21);
        curve.intensity_approx[i] =
            intensity_lorentzian_approx(p.omega_rabi_2w, p.delta_prime, rates);
    }
    return curve;
}

SpectrumReport spectrum_from_dynamics(const TwoLevelSystem& sys, const DriveField& drive,
                                      const std::optional<DissipationRates>& rates,
                                      const PropagationConfig& cfg, const PhysicalConstants& c) {
    sys.validate();
    drive.validate();
    cfg.validate();

    const EffectiveParams params = derive_drive_params(sys, drive, c);

    // Analyze the trailing half; the leading half is transient burn-in.
    const double t_analysis = 0.5 * cfg.t_end;
    if (params.omega_rabi_2w != 0.0) {
        const double envelope_period = std::numbers::pi / std::abs(params.omega_rabi_2w);
        if (t_analysis < 20.0 * envelope_period)
            throw NumericalError(
                "spectrum_from_dynamics: analysis window shorter than 20 envelope periods; "
                "increase t_end");
    }

    std::vector<double> zt(cfg.output_samples);
    PropagationConfig run_cfg = cfg;
    run_cfg.frame = Frame::lab_eq3;
    if (rates && (rates->Gamma > 0.0 || rates->gamma > 0.0)) {
        const MasterTrajectory traj =
            evolve_master(sys, drive, *rates, DensityMatrix2::ground(), run_cfg, c);
        for (std::size_t i = 0; i < zt.size(); ++i)
            zt[i] = traj.rho11[i] * sys.z11 + traj.rho22[i] * sys.z22 +
                    2.0 * sys.z12 * traj.rho21[i].real();
    } else {
        const Trajectory traj = propagate_lab(sys, drive, PureState2::ground(), run_cfg, c);
        for (std::size_t i = 0; i < zt.size(); ++i) {
            const auto& s = traj.states[i];
            const std::complex<double> r21 = s.c2 * std::conj(s.c1);
            const double r22 = std::norm(s.c2);
            zt[i] = (1.0 - r22) * sys.z11 + r22 * sys.z22 + 2.0 * sys.z12 * r21.real();
        }
    }

    const double dt = cfg.t_end / static_cast<double>(cfg.output_samples - 1);
    const std::size_t start = zt.size() / 2;
    const std::span<const double> tail(zt.data() + start, zt.size() - start);

    SpectrumReport rep;
    rep.spectrum = power_spectrum(tail, dt);
    rep.bin_width = rep.spectrum.resolution;
    rep.analysis_t_start = static_cast<double>(start) * dt;
    rep.omega_2wl = 2.0 * drive.omega_l;
    rep.power_at_2wl = power_at(rep.spectrum, rep.omega_2wl);

    const double omega_min = 2.0 * rep.spectrum.resolution;
    rep.dominant_omega = dominant_peak(rep.spectrum, omega_min).omega;

    // Collect local maxima above 1e-6 of the top peak, strongest first.
    const auto& pw = rep.spectrum.power;
    const auto& om = rep.spectrum.omega;
    double top = 0.0;
    for (std::size_t k = 1; k + 1 < pw.size(); ++k)
        if (om[k] >= omega_min) top = std::max(top, pw[k]);
    for (std::size_t k = 1; k + 1 < pw.size(); ++k) {
        if (om[k] < omega_min) continue;
        if (pw[k] > pw[k - 1] && pw[k] >= pw[k + 1] && pw[k] > 1e-6 * top)
            rep.peaks.push_back({om[k], pw[k]});
    }
    std::sort(rep.peaks.begin(), rep.peaks.end(),
              [](const SpectralPeak& a, const SpectralPeak& b) { return a.power > b.power; });
    if (rep.peaks.size() > 16) rep.peaks.resize(16);
    return rep;
}

}  // namespace ssefd
