#include "primegaps/specfun.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

namespace primegaps {

namespace {

constexpr double kEulerGamma = 0.5772156649015328606;
constexpr uint64_t kTwinProductCut = 10'000'000;

// sum_{p > P} -ln(1 - 1/(p-1)^2) estimated by the prime-density integral
// int_P^inf dt/ln(t) * [1/(t-1)^2 + 1/(2(t-1)^4)] on the substitution
// t = P e^v (Simpson).
double twin_product_tail(double P) {
    const int n = 512;  // even
    const double v_max = 40.0;
    const double dv = v_max / n;
    auto f = [&](double v) {
        const double t = P * std::exp(v);
        const double tm = t - 1.0;
        return t / std::log(t) * (1.0 / (tm * tm) + 0.5 / (tm * tm * tm * tm));
    };
    double s = f(0.0) + f(v_max);
    for (int i = 1; i < n; ++i) s += f(i * dv) * (i % 2 ? 4.0 : 2.0);
    return s * dv / 3.0;
}

double compute_twin_constant() {
    // odd-only byte sieve up to the product cutoff
    const uint64_t n = kTwinProductCut;
    std::vector<uint8_t> comp(n / 2, 0);  // index m -> 2m+1
    for (uint64_t i = 3; i * i <= n; i += 2) {
        if (comp[i / 2]) continue;
        for (uint64_t j = i * i; j <= n; j += 2 * i) comp[j / 2] = 1;
    }
    double prod = 1.0;
    for (uint64_t m = 1; m < n / 2; ++m) {
        if (comp[m]) continue;
        const double pm1 = (double)(2 * m + 1) - 1.0;
        prod *= 1.0 - 1.0 / (pm1 * pm1);
    }
    return 2.0 * prod * std::exp(-twin_product_tail((double)n));
}

}  // namespace

const Constants& Constants::get() {
    static const Constants c = [] {
        Constants k;
        k.euler_gamma = kEulerGamma;
        k.twin_constant = compute_twin_constant();
        k.c_max_gap = std::log(k.twin_constant);
        k.alpha = 2.0 / k.twin_constant;
        k.beta = 1.0 / k.twin_constant;
        return k;
    }();
    return c;
}

ZetaTable::ZetaTable() {
    constexpr int kMaxM = 200;
    constexpr int kDirect = 30;
    values_.resize(kMaxM);
    for (int m = 1; m <= kMaxM; ++m) {
        const double s = m + 1;
        double sum = 0.0;
        for (int i = kDirect; i >= 1; --i) sum += std::pow((double)i, -s);
        // Euler-Maclaurin tail at N = kDirect
        const double N = kDirect;
        double tail = std::pow(N, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(N, -s);
        tail += s * std::pow(N, -s - 1.0) / 12.0;
        tail -= s * (s + 1.0) * (s + 2.0) * std::pow(N, -s - 3.0) / 720.0;
        values_[m - 1] = sum + tail;
    }
}

const ZetaTable& ZetaTable::get() {
    static const ZetaTable t;
    return t;
}

double ZetaTable::at(int s) const {
    if (s < 2 || s > max_s()) throw std::out_of_range("zeta table: s out of range");
    return values_[s - 2];
}

double li(double x) {
    if (!(x > 1.0)) throw std::domain_error("li: requires x > 1");
    const double lx = std::log(x);
    double sum = kEulerGamma + std::log(lx);
    double term = 1.0;
    const int cap = 10 * (int)std::ceil(std::max(lx, 1.0));
    for (int n = 1; n <= cap; ++n) {
        term *= lx / n;
        const double add = term / n;
        sum += add;
        if (std::abs(add) < 1e-15 * std::abs(sum) && n > lx) break;
    }
    return sum;
}

double li_asymptotic(double x) {
    if (!(x > std::exp(1.0))) throw std::domain_error("li_asymptotic: requires x > e");
    const double lx = std::log(x);
    const int n0 = (int)std::floor(lx);
    double sum = 0.0;
    double term = x / lx;  // n = 0
    for (int n = 0; n < n0; ++n) {
        sum += term;
        term *= (n + 1) / lx;
    }
    return sum;
}

int mobius(uint64_t n) {
    if (n == 0) throw std::domain_error("mobius: n must be >= 1");
    int r = 0;
    if (n % 2 == 0) {
        n /= 2;
        if (n % 2 == 0) return 0;
        ++r;
    }
    for (uint64_t p = 3; p * p <= n; p += 2) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        ++r;
    }
    if (n > 1) ++r;
    return r % 2 ? -1 : 1;
}

double riemann_r(double x) {
    if (!(x > 1.0)) throw std::domain_error("riemann_r: requires x > 1");
    const ZetaTable& zeta = ZetaTable::get();
    const double lx = std::log(x);
    double sum = 1.0;
    double term = 1.0;
    const int cap = std::min(10 * (int)std::ceil(std::max(lx, 1.0)), zeta.max_s() - 1);
    for (int m = 1; m <= cap; ++m) {
        term *= lx / m;
        const double add = term / (m * zeta.at(m + 1));
        sum += add;
        if (std::abs(add) < 1e-15 * std::abs(sum) && m > lx) break;
    }
    return sum;
}

double riemann_r_mobius(double x) {
    if (!(x > 1.0)) throw std::domain_error("riemann_r_mobius: requires x > 1");
    constexpr int K = 40;
    double head = 0.0;
    for (int k = 1; k <= K; ++k) {
        const int mu = mobius((uint64_t)k);
        if (mu) head += (double)mu / k * li(std::pow(x, 1.0 / k));
    }
    // Tail over k > K from li(x^{1/k}) = gamma + lnln x - ln k + sum_n (ln x)^n/(k^n n n!)
    // with sum mu(k)/k = 0 and sum mu(k) ln k / k = -1.
    double s_mu = 0.0, s_mulog = 0.0;
    for (int k = 1; k <= K; ++k) {
        const int mu = mobius((uint64_t)k);
        s_mu += (double)mu / k;
        s_mulog += (double)mu * std::log((double)k) / k;
    }
    const double lx = std::log(x);
    double tail = (kEulerGamma + std::log(lx)) * (-s_mu) + (1.0 + s_mulog);
    const ZetaTable& zeta = ZetaTable::get();
    double term = 1.0;
    const int cap = std::min(10 * (int)std::ceil(std::max(lx, 1.0)), zeta.max_s() - 1);
    for (int n = 1; n <= cap; ++n) {
        term *= lx / n;
        double c = 1.0 / zeta.at(n + 1);
        for (int k = 1; k <= K; ++k) {
            const int mu = mobius((uint64_t)k);
            if (mu) c -= (double)mu * std::pow((double)k, -(double)(n + 1));
        }
        tail += term / n * c;
        if (std::abs(term / n) * std::pow((double)(K + 1), -(double)(n + 1)) <
                1e-18 * std::abs(head) &&
            n > lx)
            break;
    }
    return head + tail;
}

namespace {
void check_even_gap(uint64_t d, const char* who) {
    if (d < 2 || d % 2 != 0)
        throw std::domain_error(std::string(who) + ": d must be even and >= 2, got " +
                                std::to_string(d));
}
}  // namespace

double singular_series(uint64_t d) {
    check_even_gap(d, "singular_series");
    uint64_t m = d;
    while (m % 2 == 0) m /= 2;
    double prod = 1.0;
    for (uint64_t p = 3; p * p <= m; p += 2) {
        if (m % p) continue;
        prod *= (double)(p - 1) / (double)(p - 2);
        while (m % p == 0) m /= p;
    }
    if (m > 1) prod *= (double)(m - 1) / (double)(m - 2);
    return prod;
}

double singular_series_approx(uint64_t d) {
    check_even_gap(d, "singular_series_approx");
    // cos(2*pi*d/6) is exactly 1 when 6 | d and -1/2 otherwise (d even)
    const double c = (d % 6 == 0) ? 1.0 : -0.5;
    return (2.0 + c) / Constants::get().twin_constant;
}

std::vector<double> singular_series_table(size_t count) {
    std::vector<double> out(count);
    if (count == 0) return out;
    out[0] = Constants::get().alpha;  // P(0) undefined; mean value keeps DC honest
    if (count == 1) return out;
    const uint64_t d_max = 2 * (uint64_t)(count - 1);
    // smallest odd prime factor of odd numbers up to d_max
    std::vector<uint32_t> spf(d_max / 2 + 1, 0);  // index m -> 2m+1
    for (uint64_t p = 3; p * p <= d_max; p += 2) {
        if (spf[p / 2]) continue;
        for (uint64_t j = p * p; j <= d_max; j += 2 * p)
            if (!spf[j / 2]) spf[j / 2] = (uint32_t)p;
    }
    for (size_t k = 1; k < count; ++k) {
        uint64_t m = 2 * (uint64_t)k;
        while (m % 2 == 0) m /= 2;
        double prod = 1.0;
        while (m > 1) {
            const uint64_t p = spf[m / 2] ? spf[m / 2] : m;
            prod *= (double)(p - 1) / (double)(p - 2);
            while (m % p == 0) m /= p;
        }
        out[k] = prod;
    }
    return out;
}

double singular_series_mean(uint64_t n) {
    if (n == 0) throw std::domain_error("singular_series_mean: n must be >= 1");
    const auto table = singular_series_table((size_t)n + 1);
    double sum = 0.0, comp = 0.0;
    for (uint64_t k = 1; k <= n; ++k) {  // Kahan; n can be 1e6+
        const double y = table[k] - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum / (double)n;
}

}  // namespace primegaps
