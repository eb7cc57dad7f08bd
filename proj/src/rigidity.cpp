#include "primegaps/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "primegaps/fitting.hpp"
#include "primegaps/specfun.hpp"

namespace primegaps {

UnfoldedWindow UnfoldedWindow::make(double x, double L, std::vector<double> raw) {
    if (!(L > 0)) throw std::domain_error("UnfoldedWindow: L must be > 0");
    UnfoldedWindow w;
    w.x = x;
    w.L = L;
    for (double e : raw)
        if (e > x && e <= x + L) w.levels.push_back(e);
    std::sort(w.levels.begin(), w.levels.end());
    w.centered.reserve(w.levels.size());
    const double mid = x + L / 2;
    for (double e : w.levels) w.centered.push_back(e - mid);
    return w;
}

double delta3_unfolded(const UnfoldedWindow& window) {
    const double L = window.L;
    if (!(L > 0)) throw std::domain_error("delta3_unfolded: L must be > 0");
    const size_t n = window.centered.size();
    if (n == 0) return 0.0;  // empty staircase: exact fit by a constant
    long double s1 = 0, s2 = 0, cross = 0;
    for (size_t k = 0; k < n; ++k) {
        const long double e = window.centered[k];
        s1 += e;
        s2 += e * e;
        cross += ((long double)n - 2.0L * (long double)(k + 1) + 1.0L) * e;
    }
    const long double L2 = (long double)L * L;
    const long double nn = (long double)n;
    const long double val = nn * nn / 16.0L - s1 * s1 / L2 + 1.5L * nn * s2 / L2 -
                            3.0L * s2 * s2 / (L2 * L2) + cross / L;
    return (double)val;
}

double invert_unfolding(double target, UnfoldMode mode) {
    if (!(target > 0)) throw std::domain_error("invert_unfolding: target must be > 0");
    auto f = [&](double p) { return mode == UnfoldMode::li ? li(p) : riemann_r(p); };
    // initial guess p ~ target * ln target, then Newton with f' ~ 1/ln p
    double p = std::max(10.0, target * std::log(std::max(target, 3.0)));
    for (int it = 0; it < 64; ++it) {
        const double step = (target - f(p)) * std::log(p);
        p += step;
        if (p < 3) p = 3;
        if (std::abs(step) < 0.25) break;
    }
    return p;
}

std::vector<double> unfolded_levels_in(const SegmentedSieve& sieve, double x, double L,
                                       UnfoldMode mode) {
    auto f = [&](double p) { return mode == UnfoldMode::li ? li(p) : riemann_r(p); };
    const double p_lo = invert_unfolding(x, mode);
    const double p_hi = invert_unfolding(x + L, mode);
    const double margin = std::max(64.0 * std::log(p_hi), 1e-6 * p_hi);
    if (p_hi + margin >= (double)sieve.limit())
        throw std::out_of_range(
            "unfolded_levels_in: sieve limit " + std::to_string(sieve.limit()) +
            " too small, need primes up to about " +
            std::to_string((uint64_t)(p_hi + margin)));
    std::vector<double> out;
    const uint64_t start = (uint64_t)std::max(3.0, p_lo - margin);
    sieve.for_each_prime_from(start, [&](uint64_t p) {
        const double r = f((double)p);
        if (r > x + L) return false;
        if (r > x) out.push_back(r);
        return true;
    });
    return out;
}

double delta3_primes(const SegmentedSieve& sieve, double x, double L, UnfoldMode mode) {
    auto levels = unfolded_levels_in(sieve, x, L, mode);
    return delta3_unfolded(UnfoldedWindow::make(x, L, std::move(levels)));
}

std::pair<double, double> smooth_fit_ab(double x, double L) {
    if (!(x > std::exp(1.0)) || !(L > 0))
        throw std::domain_error("smooth_fit_ab: need x > e and L > 0");
    auto g = [](double t) { return t / std::log(t); };
    const double a = 2.0 / L * (g(x + 0.75 * L) - g(x + 0.25 * L));
    const double b = g(x + 0.25 * L) - a * L / 4.0;
    return {a, b};
}

double delta3_sampled(const StaircaseSample& sample, uint64_t x, uint64_t L) {
    const uint64_t h = sample.h;
    if (h == 0) throw std::invalid_argument("delta3_sampled: empty sample");
    if (L % h != 0)
        throw std::invalid_argument("delta3_sampled: L must be a multiple of h");
    if (x < sample.x0 || (x - sample.x0) % h != 0)
        throw std::invalid_argument("delta3_sampled: x must sit on the sample grid");
    const uint64_t first = (x - sample.x0) / h;
    const uint64_t terms = L / h;
    if (terms < 2) throw std::invalid_argument("delta3_sampled: need at least 2 grid points");
    if (first + terms > sample.values.size())
        throw std::out_of_range("delta3_sampled: sample does not cover [x, x+L)");

    std::vector<std::pair<double, double>> pts;
    pts.reserve(terms);
    for (uint64_t k = 0; k < terms; ++k)
        pts.emplace_back((double)(k * h), (double)sample.values[first + k]);
    const LinearFit fit = linear_lsq(pts);

    const long double a = fit.a, b = fit.b;
    const long double Ld = (long double)L, hd = (long double)h;
    long double sum = 0;
    for (uint64_t k = 0; k < terms; ++k) {
        const long double y = (long double)sample.values[first + k];
        sum += y * (y - 2 * b) * hd - a * y * (2.0L * k + 1.0L) * hd * hd;
    }
    return (double)(b * b + a * b * Ld + a * a * Ld * Ld / 3.0L + sum / Ld);
}

double leading_term(double x, double h) {
    if (!(x > 1) || !(h > 0)) throw std::domain_error("leading_term: need x > 1, h > 0");
    const double lx = std::log(x);
    return h * h / (3.0 * lx * lx);
}

void write_rigidity_csv(const RigidityCurve& c, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << "L,delta3,method,x,h,ensemble_size\n";
    f.precision(17);
    const char* m = c.method == RigidityCurve::Method::unfolded ? "unfolded" : "sampled";
    for (const auto& [L, v] : c.points)
        f << L << ',' << v << ',' << m << ',' << c.x << ',' << c.h << ','
          << c.ensemble_size << '\n';
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace primegaps
