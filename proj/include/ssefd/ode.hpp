#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>

#include "ssefd/errors.hpp"

namespace ssefd {

using Vec4 = std::array<double, 4>;

// Global error grows roughly as 0.01 * steps * rel_tol on oscillatory
// problems, so conserving unitarity to 1e-9 over ~1e6-step runs needs the
// tight defaults below.
struct OdeOptions {
    double rel_tol = 1e-13;
    double abs_tol = 1e-16;
    double max_step = std::numeric_limits<double>::infinity();
    std::int64_t max_steps = 50'000'000;
};

struct OdeStats {
    std::int64_t accepted = 0;
    std::int64_t rejected = 0;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
inline constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                        b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// b - bhat, for the embedded 4th-order error estimate.
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Dense-output coefficients (4th-order continuous extension).
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

}  // namespace detail

// Integrates dy/dt = f(t, y) from t0 to t1 with adaptive Dormand-Prince 5(4)
// steps, emitting dense-output samples at the requested times (sorted,
// within [t0, t1]). emit(i, t, y) is called once per sample in order.
template <class RHS, class Emit>
OdeStats integrate_dopri5(RHS&& f, Vec4 y, double t0, double t1, const OdeOptions& opt,
                          std::span<const double> sample_times, Emit&& emit) {
    using namespace detail;
    OdeStats stats;
    if (!(t1 > t0)) throw std::invalid_argument("integrate_dopri5: t1 must exceed t0");

    std::size_t next_sample = 0;
    while (next_sample < sample_times.size() && sample_times[next_sample] <= t0) {
        emit(next_sample, t0, y);
        ++next_sample;
    }

    Vec4 k1{}, k2{}, k3{}, k4{}, k5{}, k6{}, k7{}, ytmp{}, ynew{};
    f(t0, y, k1);

    // Initial step: small fraction of the span, limited by the derivative scale.
    double h = (t1 - t0) * 1e-4;
    {
        double dn = 0.0, yn = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double sk = opt.abs_tol + opt.rel_tol * std::abs(y[i]);
            dn += (k1[i] / sk) * (k1[i] / sk);
            yn += (y[i] / sk) * (y[i] / sk);
        }
        if (dn > 0.0 && yn > 0.0) h = std::min(h, 0.01 * std::sqrt(yn / dn));
    }
    h = std::min(h, opt.max_step);

    const double span = t1 - t0;
    const double h_floor = 64.0 * std::numeric_limits<double>::epsilon() *
                           std::max(std::abs(t1), span);
    double t = t0;
    while (t < t1) {
        if (stats.accepted + stats.rejected > opt.max_steps)
            throw NumericalError("integrate_dopri5: step budget exhausted");
        if (h < h_floor)
            throw NumericalError("integrate_dopri5: step-size underflow (stiffness)");

        bool last = false;
        if (t + h >= t1) {
            h = t1 - t;
            last = true;
        }

        for (int i = 0; i < 4; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        f(t + c2 * h, ytmp, k2);
        for (int i = 0; i < 4; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        f(t + c3 * h, ytmp, k3);
        for (int i = 0; i < 4; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(t + c4 * h, ytmp, k4);
        for (int i = 0; i < 4; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(t + c5 * h, ytmp, k5);
        for (int i = 0; i < 4; ++i)
            ytmp[i] = y[i] +
                      h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        f(t + h, ytmp, k6);
        for (int i = 0; i < 4; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        f(t + h, ynew, k7);

        double err = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double sk =
                opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err += (ei / sk) * (ei / sk);
        }
        err = std::sqrt(err / 4.0);

        if (!std::isfinite(err)) {  // blown-up right-hand side: retreat hard
            stats.rejected++;
            h *= 0.1;
            continue;
        }

        if (err <= 1.0) {
            stats.accepted++;
            // Continuous extension over [t, t+h] for the pending samples.
            while (next_sample < sample_times.size() &&
                   sample_times[next_sample] <= t + h + 1e-12 * std::abs(t + h) &&
                   sample_times[next_sample] <= t1) {
                const double th = std::min(sample_times[next_sample], t + h);
                const double theta = (th - t) / h;
                Vec4 ys{};
                for (int i = 0; i < 4; ++i) {
                    const double ydiff = ynew[i] - y[i];
                    const double bspl = h * k1[i] - ydiff;
                    const double r5 = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                           d6 * k6[i] + d7 * k7[i]);
                    ys[i] = y[i] +
                            theta * (ydiff +
                                     (1.0 - theta) *
                                         (bspl + theta * ((ydiff - h * k7[i] - bspl) +
                                                          (1.0 - theta) * r5)));
                }
                emit(next_sample, th, ys);
                ++next_sample;
            }
            t += h;
            y = ynew;
            k1 = k7;  // first-same-as-last
            if (last) break;
            const double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            h *= std::clamp(fac, 0.2, 5.0);
            h = std::min(h, opt.max_step);
        } else {
            stats.rejected++;
            const double fac = 0.9 * std::pow(err, -0.2);
            h *= std::clamp(fac, 0.1, 1.0);
        }
    }

    // Guard against samples exactly at t1 left over from rounding.
    while (next_sample < sample_times.size()) {
        emit(next_sample, t1, y);
        ++next_sample;
    }
    return stats;
}

}  // namespace ssefd
