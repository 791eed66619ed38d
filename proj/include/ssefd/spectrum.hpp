#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ssefd {

// In-place radix-2 Cooley-Tukey; length must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a);

std::size_t next_pow2(std::size_t n);

// Hann-windowed, zero-padded power spectrum of a real series sampled at dt.
// Returns one-sided |X_k|^2 on omega_k = 2*pi*k/(n_padded*dt), k = 0..n/2.
struct PowerSpectrum {
    std::vector<double> omega;  // rad/s
    std::vector<double> power;  // arbitrary units
    double bin_width = 0.0;     // rad/s between padded bins
    double resolution = 0.0;    // rad/s, 2*pi/(window length): the honest bin
};

PowerSpectrum power_spectrum(std::span<const double> samples, double dt,
                             bool subtract_mean = true, int pad_factor = 8);

// Location of the strongest spectral peak, refined by parabolic interpolation
// across the neighboring bins. Bins with omega < omega_min are excluded
// (DC leakage guard).
struct SpectralPeak {
    double omega = 0.0;
    double power = 0.0;
};

SpectralPeak dominant_peak(const PowerSpectrum& ps, double omega_min);

// Dominant oscillation frequency of a mean-subtracted series; omega_min
// defaults to two resolution widths to skip the DC remnant.
double dominant_frequency(std::span<const double> samples, double dt);

// Power at the padded bin nearest omega.
double power_at(const PowerSpectrum& ps, double omega);

// Centered moving average with edge truncation; half_width in samples.
std::vector<double> boxcar_smooth(std::span<const double> samples, int half_width);

// Sliding max (upper = true) or min over a centered window: the hull pair of
// an oscillating signal.
std::vector<double> sliding_extremum(std::span<const double> samples, int half_width,
                                     bool upper);

}  // namespace ssefd
