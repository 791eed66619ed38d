#include "ssefd/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ssefd {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft_inplace(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_inplace: length must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

PowerSpectrum power_spectrum(std::span<const double> samples, double dt, bool subtract_mean,
                             int pad_factor) {
    const std::size_t n = samples.size();
    if (n < 4) throw std::invalid_argument("power_spectrum: need at least 4 samples");
    if (!(dt > 0.0)) throw std::invalid_argument("power_spectrum: dt must be positive");
    if (pad_factor < 1) throw std::invalid_argument("power_spectrum: pad_factor must be >= 1");

    double mean = 0.0;
    if (subtract_mean) {
        for (double v : samples) mean += v;
        mean /= static_cast<double>(n);
    }

    const std::size_t nfft = next_pow2(n * static_cast<std::size_t>(pad_factor));
    std::vector<std::complex<double>> buf(nfft, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double w =
            0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                 static_cast<double>(n - 1));
        buf[i] = (samples[i] - mean) * w;
    }
    fft_inplace(buf);

    PowerSpectrum ps;
    ps.bin_width = 2.0 * std::numbers::pi / (static_cast<double>(nfft) * dt);
    ps.resolution = 2.0 * std::numbers::pi / (static_cast<double>(n) * dt);
    const std::size_t half = nfft / 2;
    ps.omega.resize(half + 1);
    ps.power.resize(half + 1);
    for (std::size_t k = 0; k <= half; ++k) {
        ps.omega[k] = ps.bin_width * static_cast<double>(k);
        ps.power[k] = std::norm(buf[k]);
    }
    return ps;
}

SpectralPeak dominant_peak(const PowerSpectrum& ps, double omega_min) {
    const std::size_t nb = ps.power.size();
    std::size_t k0 = 0;
    while (k0 < nb && ps.omega[k0] < omega_min) ++k0;
    if (k0 >= nb) throw std::invalid_argument("dominant_peak: omega_min beyond Nyquist");

    std::size_t kmax = k0;
    for (std::size_t k = k0; k < nb; ++k)
        if (ps.power[k] > ps.power[kmax]) kmax = k;

    SpectralPeak peak{ps.omega[kmax], ps.power[kmax]};
    if (kmax > 0 && kmax + 1 < nb) {
        const double l = ps.power[kmax - 1], c = ps.power[kmax], r = ps.power[kmax + 1];
        const double denom = l - 2.0 * c + r;
        if (denom < 0.0) {
            const double shift = 0.5 * (l - r) / denom;
            peak.omega += shift * ps.bin_width;
        }
    }
    return peak;
}

double dominant_frequency(std::span<const double> samples, double dt) {
    const PowerSpectrum ps = power_spectrum(samples, dt);
    return dominant_peak(ps, 2.0 * ps.resolution).omega;
}

double power_at(const PowerSpectrum& ps, double omega) {
    if (ps.power.empty()) throw std::invalid_argument("power_at: empty spectrum");
    const double k = omega / ps.bin_width;
    const std::size_t idx = static_cast<std::size_t>(
        std::clamp(std::llround(k), 0ll, static_cast<long long>(ps.power.size() - 1)));
    return ps.power[idx];
}

std::vector<double> boxcar_smooth(std::span<const double> samples, int half_width) {
    if (half_width < 0) throw std::invalid_argument("boxcar_smooth: negative width");
    std::vector<double> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const std::size_t lo = i >= static_cast<std::size_t>(half_width) ? i - half_width : 0;
        const std::size_t hi =
            std::min(samples.size() - 1, i + static_cast<std::size_t>(half_width));
        double s = 0.0;
        for (std::size_t k = lo; k <= hi; ++k) s += samples[k];
        out[i] = s / static_cast<double>(hi - lo + 1);
    }
    return out;
}

std::vector<double> sliding_extremum(std::span<const double> samples, int half_width,
                                     bool upper) {
    if (half_width < 0) throw std::invalid_argument("sliding_extremum: negative width");
    std::vector<double> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const std::size_t lo = i >= static_cast<std::size_t>(half_width) ? i - half_width : 0;
        const std::size_t hi =
            std::min(samples.size() - 1, i + static_cast<std::size_t>(half_width));
        double m = samples[lo];
        for (std::size_t k = lo; k <= hi; ++k)
            m = upper ? std::max(m, samples[k]) : std::min(m, samples[k]);
        out[i] = m;
    }
    return out;
}

}  // namespace ssefd
