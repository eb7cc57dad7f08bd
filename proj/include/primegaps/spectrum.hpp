#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace primegaps {

// |DFT|^2 of the singular-series samples P(0), P(2), ..., P(2(M-1)),
// with P(0) := 2/C2 (mean value, keeps the DC bin honest).
struct PowerSpectrum {
    size_t M = 0;
    std::vector<double> frequencies;  // f_n = n/(2M), n = 0..M-1
    std::vector<double> power;        // S(f_n) = |P~(f_n)|^2
};

// DFT with kernel e^{-2 pi i k n / M}; radix-2 FFT when the length is a
// power of two, direct evaluation otherwise.
std::vector<std::complex<double>> dft(const std::vector<double>& samples);

PowerSpectrum power_spectrum(size_t M);

// Same spectrum for an arbitrary real signal (used by synthetic tests).
PowerSpectrum power_spectrum_of(const std::vector<double>& samples);

// Local maxima among the non-DC bins n = 1..M/2, as (period 2M/n, power),
// strongest first.
std::vector<std::pair<double, double>> spectrum_peaks(const PowerSpectrum& s);

// CSV "inv_f,power" over n = 1..M/2, sorted by 1/f ascending.
void write_spectrum_csv(const PowerSpectrum& s, const std::string& path);

}  // namespace primegaps
