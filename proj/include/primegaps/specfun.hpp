#pragma once

#include <cstdint>
#include <vector>

namespace primegaps {

// Shared number-theoretic constants. The twin-prime constant is computed at
// first use from its defining product 2*prod_{p>2}(1 - 1/(p-1)^2) over
// p <= 1e7 with an integral tail estimate; the derived quantities are exact
// functions of it.
struct Constants {
    double euler_gamma;    // 0.577216...
    double twin_constant;  // C2 = 1.32032...
    double c_max_gap;      // ln C2
    double alpha;          // 2/C2
    double beta;           // 1/C2

    static const Constants& get();
};

// zeta(m+1) for m = 1..M_max, 15 digits (direct sum + Euler-Maclaurin tail).
class ZetaTable {
public:
    static const ZetaTable& get();
    // zeta(s) for integer s >= 2
    double at(int s) const;
    int max_s() const { return (int)values_.size() + 1; }

private:
    ZetaTable();
    std::vector<double> values_;  // values_[m-1] = zeta(m+1)
};

// Logarithmic integral li(x) = gamma + ln ln x + sum ln^n(x)/(n*n!), x > 1.
// This is li from 0 (= Ei(ln x)); it exceeds the integral from 2 by
// li(2) ~= 1.045.
double li(double x);

// Divergent asymptotic expansion sum_{n<floor(ln x)} n! x / ln^{n+1} x.
double li_asymptotic(double x);

// Moebius function; throws for n = 0.
int mobius(uint64_t n);

// Riemann's R(x) via the Gram series 1 + sum ln^m(x)/(m*m!*zeta(m+1)).
double riemann_r(double x);

// R(x) via the Moebius form sum mu(k)/k * li(x^{1/k}), head k <= 40 plus an
// analytic tail. Cross-check route for riemann_r.
double riemann_r_mobius(double x);

// Hardy-Littlewood product P(d) = prod_{p|d, p>2} (p-1)/(p-2), d even.
double singular_series(uint64_t d);

// Cosine approximation (1/C2)(2 + cos(2*pi*d/6)); two values only on even d.
double singular_series_approx(uint64_t d);

// (1/n) sum_{k=1..n} P(2k); tends to 2/C2.
double singular_series_mean(uint64_t n);

// P(2k) for k = 0..count-1 with P(0) := 2/C2 (mean value; see spectrum).
// Bulk path backed by a smallest-prime-factor sieve.
std::vector<double> singular_series_table(size_t count);

}  // namespace primegaps
