#include "primegaps/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "primegaps/specfun.hpp"

namespace primegaps {

namespace {

void fft_radix2(std::vector<std::complex<double>>& a) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / (double)len;
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (size_t k = 0; k < len / 2; ++k, w *= wl) {
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

}  // namespace

std::vector<std::complex<double>> dft(const std::vector<double>& samples) {
    const size_t M = samples.size();
    if (M == 0) throw std::invalid_argument("dft: empty input");
    if ((M & (M - 1)) == 0) {
        std::vector<std::complex<double>> a(samples.begin(), samples.end());
        fft_radix2(a);
        return a;
    }
    std::vector<std::complex<double>> out(M);
    const double w = -2.0 * std::numbers::pi / (double)M;
    for (size_t n = 0; n < M; ++n) {
        double re = 0, im = 0;
        for (size_t k = 0; k < M; ++k) {
            const double ph = w * (double)(k * n % M);
            re += samples[k] * std::cos(ph);
            im += samples[k] * std::sin(ph);
        }
        out[n] = {re, im};
    }
    return out;
}

PowerSpectrum power_spectrum_of(const std::vector<double>& samples) {
    const auto spec = dft(samples);
    const size_t M = samples.size();
    PowerSpectrum out;
    out.M = M;
    out.frequencies.reserve(M);
    out.power.reserve(M);
    for (size_t n = 0; n < M; ++n) {
        out.frequencies.push_back((double)n / (2.0 * (double)M));
        out.power.push_back(std::norm(spec[n]));
    }
    return out;
}

PowerSpectrum power_spectrum(size_t M) {
    if (M < 8) throw std::invalid_argument("power_spectrum: M must be >= 8");
    return power_spectrum_of(singular_series_table(M));
}

std::vector<std::pair<double, double>> spectrum_peaks(const PowerSpectrum& s) {
    std::vector<std::pair<double, double>> peaks;
    for (size_t n = 1; n + 1 < s.power.size() && n <= s.M / 2; ++n)
        if (s.power[n] > s.power[n - 1] && s.power[n] >= s.power[n + 1])
            peaks.emplace_back(2.0 * (double)s.M / (double)n, s.power[n]);
    std::sort(peaks.begin(), peaks.end(),
              [](const auto& a, const auto& b) { return a.second > b.second; });
    return peaks;
}

void write_spectrum_csv(const PowerSpectrum& s, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << "inv_f,power\n";
    f.precision(17);
    for (size_t n = s.M / 2; n >= 1; --n)
        f << 2.0 * (double)s.M / (double)n << ',' << s.power[n] << '\n';
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace primegaps
