#include <doctest.h>

#include <cmath>
#include <numbers>

#include "primegaps/specfun.hpp"

using namespace primegaps;

namespace {

// Independent oracle for li: li(x) = PV integral_0^x dt/ln t
//                                  = integral_mu^x dt/ln t
// with Soldner's constant mu (li(mu) = 0). Adaptive Simpson quadrature.
constexpr double kSoldner = 1.45136923488338105;

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(double a, double b, double fa, double fm, double fb, double whole,
             double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = 1.0 / std::log(lm), frm = 1.0 / std::log(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15 * eps)
        return left + right + (left + right - whole) / 15.0;
    return adapt(a, m, fa, flm, fm, left, eps / 2, depth - 1) +
           adapt(m, b, fm, frm, fb, right, eps / 2, depth - 1);
}

double li_quadrature(double x) {
    const double a = kSoldner, b = x;
    const double fa = 1.0 / std::log(a), fb = 1.0 / std::log(b);
    const double m = 0.5 * (a + b), fm = 1.0 / std::log(m);
    return adapt(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), 1e-12, 40);
}

int mobius_oracle(uint64_t n) {
    int r = 0;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        ++r;
    }
    if (n > 1) ++r;
    return r % 2 ? -1 : 1;
}

}  // namespace

TEST_CASE("constants") {
    const auto& c = Constants::get();
    CHECK(c.euler_gamma == doctest::Approx(0.5772156649015329).epsilon(1e-14));
    // published twin-prime constant 1.3203236316937391...
    CHECK(c.twin_constant == doctest::Approx(1.3203236316937392).epsilon(1e-9));
    CHECK(c.alpha == 2.0 / c.twin_constant);
    CHECK(c.beta == 1.0 / c.twin_constant);
    CHECK(c.c_max_gap == doctest::Approx(0.2778769).epsilon(1e-6));
    CHECK(c.c_max_gap == std::log(c.twin_constant));
    CHECK(c.alpha == doctest::Approx(1.5147801281).epsilon(1e-9));
}

TEST_CASE("zeta table") {
    const auto& z = ZetaTable::get();
    CHECK(z.at(2) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-12));
    CHECK(z.at(3) == doctest::Approx(1.2020569031595943).epsilon(1e-12));
    CHECK(z.at(4) == doctest::Approx(std::pow(std::numbers::pi, 4) / 90).epsilon(1e-12));
    // strictly decreasing until the values round to 1.0 in double precision
    for (int s = 3; s <= 40; ++s) CHECK(z.at(s) < z.at(s - 1));
    for (int s = 3; s <= z.max_s(); ++s) {
        CHECK(z.at(s) <= z.at(s - 1));
        CHECK(z.at(s) >= 1.0);
    }
}

TEST_CASE("li agrees with the quadrature oracle") {
    CHECK(li(2) == doctest::Approx(1.04516378).epsilon(1e-7));
    for (double x : {2.0, 10.0, 1e3, 1e6, 1e9})
        CHECK(li(x) == doctest::Approx(li_quadrature(x)).epsilon(1e-10));
    CHECK(li(1e6) == doctest::Approx(78627.5).epsilon(1e-4));
    CHECK_THROWS(li(1.0));
    CHECK_THROWS(li(0.5));
}

TEST_CASE("li_asymptotic") {
    const double e2 = std::exp(2.0);
    CHECK(li_asymptotic(e2) == doctest::Approx(e2 * 0.75).epsilon(1e-12));
    CHECK(std::abs(li_asymptotic(1e6) / li(1e6) - 1) < 1e-3);
    CHECK(std::abs(li_asymptotic(1e10) / li(1e10) - 1) < 1e-5);
}

TEST_CASE("mobius") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(2) == -1);
    CHECK(mobius(4) == 0);
    CHECK(mobius(6) == 1);
    CHECK(mobius(30) == -1);
    CHECK_THROWS(mobius(0));
    for (uint64_t n = 1; n <= 3000; ++n) CHECK(mobius(n) == mobius_oracle(n));
}

TEST_CASE("classical Moebius identity sum mu(n) floor(N/n) = 1") {
    for (uint64_t N : {uint64_t{10}, uint64_t{100}, uint64_t{1234}, uint64_t{10000}}) {
        int64_t s = 0;
        for (uint64_t n = 1; n <= N; ++n) s += mobius(n) * (int64_t)(N / n);
        CHECK(s == 1);
    }
}

TEST_CASE("riemann_r reference values") {
    CHECK(std::abs(riemann_r(2038076627.0) - (1e8 + 1.85)) < 0.01);
    CHECK(std::abs(riemann_r(22801797631.0) - (1e9 + 2.32)) < 0.01);
    CHECK(std::abs(riemann_r(252097715777.0) - (1e10 + 0.002)) < 0.01);
    CHECK_THROWS(riemann_r(1.0));
}

TEST_CASE("Gram series and Moebius-Li form agree") {
    for (double lg = 2.0; lg <= 12.0; lg += 0.5) {
        const double x = std::pow(10.0, lg);
        CHECK(riemann_r(x) == doctest::Approx(riemann_r_mobius(x)).epsilon(1e-8));
    }
}

TEST_CASE("R(x)/li(x) ~ 1 - 1/sqrt(x)") {
    // higher-order cube-root terms are still ~3e-4 at 1e6; they die off above
    CHECK(std::abs(riemann_r(1e6) / li(1e6) - (1.0 - 1.0 / std::sqrt(1e6))) < 3e-4);
    for (double x : {1e8, 1e10})
        CHECK(std::abs(riemann_r(x) / li(x) - (1.0 - 1.0 / std::sqrt(x))) < 1e-4);
}

TEST_CASE("singular series exact values") {
    CHECK(singular_series(2) == 1.0);
    CHECK(singular_series(4) == 1.0);
    CHECK(singular_series(6) == 2.0);
    CHECK(singular_series(30) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
    CHECK(singular_series(210) == doctest::Approx(16.0 / 5.0).epsilon(1e-15));
    CHECK(singular_series(36) == 2.0);
    CHECK_THROWS(singular_series(3));
    CHECK_THROWS(singular_series(0));
}

TEST_CASE("P(d) properties on even d <= 1e4") {
    for (uint64_t d = 2; d <= 10000; d += 2) {
        const double P = singular_series(d);
        CHECK(P >= 1.0);
        const bool pow2 = (d & (d - 1)) == 0;
        if (pow2)
            CHECK(P == 1.0);
        else
            CHECK(P > 1.0);
        if (d <= 100) CHECK(singular_series(d * d) == doctest::Approx(P).epsilon(1e-15));
    }
}

TEST_CASE("singular_series_approx") {
    const double C2 = Constants::get().twin_constant;
    CHECK(singular_series_approx(6) == doctest::Approx(3.0 / C2).epsilon(1e-14));
    CHECK(singular_series_approx(2) == doctest::Approx(1.5 / C2).epsilon(1e-14));
    CHECK(singular_series_approx(36) == singular_series_approx(6));
    for (uint64_t d = 2; d <= 1000; d += 2) {
        const double v = singular_series_approx(d);
        if (d % 6 == 0)
            CHECK(v == doctest::Approx(3.0 / C2).epsilon(1e-14));
        else
            CHECK(v == doctest::Approx(1.5 / C2).epsilon(1e-14));
    }
}

TEST_CASE("singular_series_mean") {
    CHECK(singular_series_mean(1) == 1.0);
    CHECK(singular_series_mean(3) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    const double limit = 2.0 / Constants::get().twin_constant;
    CHECK(std::abs(singular_series_mean(1000000) - limit) < 1e-3);
}

TEST_CASE("singular_series_table matches the per-call path") {
    const auto tab = singular_series_table(5000);
    CHECK(tab[0] == doctest::Approx(2.0 / Constants::get().twin_constant).epsilon(1e-14));
    for (size_t k = 1; k < tab.size(); ++k)
        CHECK(tab[k] == doctest::Approx(singular_series(2 * k)).epsilon(1e-13));
}
