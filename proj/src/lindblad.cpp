#include "ssefd/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ssefd/errors.hpp"
#include "ssefd/ode.hpp"

namespace ssefd {

double DensityMatrix2::min_eigenvalue() const {
    const double half_diff = 0.5 * (rho11 - rho22);
    const double r = std::sqrt(half_diff * half_diff + std::norm(rho21));
    return 0.5 * (rho11 + rho22) - r;
}

void DensityMatrix2::validate() const {
    if (!(rho11 >= -1e-9) || !(rho22 >= -1e-9) || rho11 > 1.0 + 1e-9 || rho22 > 1.0 + 1e-9)
        throw std::invalid_argument("DensityMatrix2: populations out of [0, 1]");
    if (std::abs(rho11 + rho22 - 1.0) > 1e-9)
        throw std::invalid_argument("DensityMatrix2: trace must be 1");
    if (std::norm(rho21) > rho11 * rho22 + 1e-9)
        throw std::invalid_argument("DensityMatrix2: |rho21|^2 exceeds rho11*rho22 (positivity)");
}

void DissipationRates::validate() const {
    if (!(Gamma >= 0.0) || !(gamma >= 0.0))
        throw std::invalid_argument("DissipationRates: rates must be >= 0");
}

namespace {

// State layout: y = (rho11, rho22, Re rho21, Im rho21).
Vec4 pack(const DensityMatrix2& r) {
    return {r.rho11, r.rho22, r.rho21.real(), r.rho21.imag()};
}

DensityMatrix2 unpack(const Vec4& y) { return {y[0], y[1], {y[2], y[3]}}; }

template <class RHS>
MasterTrajectory run_master(RHS&& rhs, const DensityMatrix2& init, const PropagationConfig& cfg) {
    init.validate();
    cfg.validate();

    const std::vector<double> ts = cfg.sample_times();
    MasterTrajectory traj;
    traj.times = ts;
    traj.rho11.resize(ts.size());
    traj.rho22.resize(ts.size());
    traj.rho21.resize(ts.size());
    traj.min_eigenvalue = 1.0;

    OdeOptions opt{cfg.rel_tol, cfg.abs_tol};
    integrate_dopri5(rhs, pack(init), 0.0, cfg.t_end, opt, ts,
                     [&](std::size_t i, double, const Vec4& y) {
                         const DensityMatrix2 r = unpack(y);
                         traj.rho11[i] = r.rho11;
                         traj.rho22[i] = r.rho22;
                         traj.rho21[i] = r.rho21;
                         traj.max_trace_drift = std::max(traj.max_trace_drift,
                                                         std::abs(r.rho11 + r.rho22 - 1.0));
                         traj.min_eigenvalue = std::min(traj.min_eigenvalue, r.min_eigenvalue());
                     });

    if (traj.max_trace_drift > std::max(1e-9, 1000.0 * cfg.rel_tol))
        throw NumericalError("evolve_master: trace drift exceeds budget");
    if (traj.min_eigenvalue < -std::max(1e-9, 1000.0 * cfg.rel_tol))
        throw NumericalError("evolve_master: positivity violated beyond tolerance");
    return traj;
}

}  // namespace

MasterTrajectory evolve_master(const EffectiveParams& params, double phase_phi,
                               const DissipationRates& rates, const DensityMatrix2& init,
                               const PropagationConfig& cfg) {
    rates.validate();
    const double W = params.omega_rabi_2w;
    const double dp = params.delta_prime;
    const double G = rates.Gamma;
    const double K = rates.K();
    const double c2 = std::cos(2.0 * phase_phi);
    const double s2 = std::sin(2.0 * phase_phi);

    const auto rhs = [=](double, const Vec4& y, Vec4& dy) {
        const double pump = 2.0 * W * (c2 * y[3] + s2 * y[2]);  // 2 W Im(e^{i2phi} rho21)
        const double inv = y[0] - y[1];
        dy[0] = -pump + G * y[1];
        dy[1] = pump - G * y[1];
        dy[2] = W * s2 * inv + dp * y[3] - K * y[2];
        dy[3] = W * c2 * inv - dp * y[2] - K * y[3];
    };
    return run_master(rhs, init, cfg);
}

MasterTrajectory evolve_master(const TwoLevelSystem& sys, const DriveField& drive,
                               const DissipationRates& rates, const DensityMatrix2& init,
                               const PropagationConfig& cfg, const PhysicalConstants& c) {
    sys.validate();
    drive.validate();
    rates.validate();

    const auto coup = drive_couplings(sys, drive, c);
    const double we = sys.omega_e;
    const double two_rabi = 2.0 * coup.omega_rabi;
    const double four_stark = 4.0 * coup.omega_stark;
    const double wl = drive.omega_l;
    const double phi = drive.phase;
    const double G = rates.Gamma;
    const double K = rates.K();

    // H/hbar = [[a, g], [g, -a]] with a = -omega_e/2 + 2 stark cos(theta),
    // g = -2 rabi cos(theta); D = -2a is the instantaneous splitting.
    const auto rhs = [=](double t, const Vec4& y, Vec4& dy) {
        const double cth = std::cos(wl * t + phi);
        const double g = -two_rabi * cth;
        const double D = we - four_stark * cth;
        const double inv = y[0] - y[1];
        dy[0] = 2.0 * g * y[3] + G * y[1];
        dy[1] = -2.0 * g * y[3] - G * y[1];
        dy[2] = D * y[3] - K * y[2];
        dy[3] = -g * inv - D * y[2] - K * y[3];
    };
    return run_master(rhs, init, cfg);
}

DensityMatrix2 steady_state(const EffectiveParams& params, const DissipationRates& rates,
                            double phase_phi) {
    rates.validate();
    const double W = params.omega_rabi_2w;
    const double dp = params.delta_prime;
    const double G = rates.Gamma;
    const double K = rates.K();

    if (W == 0.0 && G == 0.0)
        throw std::invalid_argument("steady_state: requires a drive or a decay channel");
    if (G == 0.0)
        throw NumericalError(
            "steady_state: no steady state for Gamma = 0 with a nonzero drive");

    DensityMatrix2 r;
    const double k2d2 = K * K + dp * dp;
    r.rho22 = 2.0 * W * W * K / (G * k2d2 + 4.0 * W * W * K);
    r.rho11 = 1.0 - r.rho22;
    const std::complex<double> phase(std::cos(2.0 * phase_phi), -std::sin(2.0 * phase_phi));
    r.rho21 = W * phase * (r.rho11 - r.rho22) * std::complex<double>(dp, K) / k2d2;
    return r;
}

double steady_state_residual(const EffectiveParams& params, const DissipationRates& rates,
                             double phase_phi, const DensityMatrix2& state) {
    const double W = params.omega_rabi_2w;
    const double dp = params.delta_prime;
    const double G = rates.Gamma;
    const double K = rates.K();
    const double c2 = std::cos(2.0 * phase_phi);
    const double s2 = std::sin(2.0 * phase_phi);

    const Vec4 y = pack(state);
    const double pump = 2.0 * W * (c2 * y[3] + s2 * y[2]);
    const double inv = y[0] - y[1];
    const Vec4 dy = {-pump + G * y[1], pump - G * y[1], W * s2 * inv + dp * y[3] - K * y[2],
                     W * c2 * inv - dp * y[2] - K * y[3]};
    double m = 0.0;
    for (double v : dy) m = std::max(m, std::abs(v));
    return m;
}

SteadyConsistencyReport steady_vs_longtime(const EffectiveParams& params, double phase_phi,
                                           const DissipationRates& rates,
                                           const PropagationConfig& cfg) {
    rates.validate();
    if (!(rates.Gamma > 0.0))
        throw std::invalid_argument("steady_vs_longtime: requires Gamma > 0");

    const DensityMatrix2 target = steady_state(params, rates, phase_phi);

    PropagationConfig long_cfg = cfg;
    long_cfg.t_end = 20.0 / rates.Gamma;
    long_cfg.frame = Frame::effective_HL_eq8;
    const MasterTrajectory traj =
        evolve_master(params, phase_phi, rates, DensityMatrix2::ground(), long_cfg);

    const std::size_t last = traj.times.size() - 1;
    SteadyConsistencyReport rep;
    rep.t_used = long_cfg.t_end;
    rep.max_abs_diff = std::max({std::abs(traj.rho11[last] - target.rho11),
                                 std::abs(traj.rho22[last] - target.rho22),
                                 std::abs(traj.rho21[last] - target.rho21)});
    rep.converged = rep.max_abs_diff < 1e-6;
    return rep;
}

}  // namespace ssefd
