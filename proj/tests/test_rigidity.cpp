#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <vector>

#include "primegaps/rigidity.hpp"
#include "primegaps/sieve.hpp"
#include "primegaps/specfun.hpp"

using namespace primegaps;

namespace {

// Independent oracle: exact piecewise integration of the defining
// minimization. For centered levels in [-L/2, L/2] the staircase
// N(eps) = #levels <= eps is constant between breakpoints, so
//   min_{a,b} (1/L) int (N - a*eps - b)^2 deps
// has the closed normal-equation solution a = 12*I1/L^3, b = I0/L with
// I0 = int N, I1 = int eps*N, and minimum (1/L)(I2 - a*I1 - b*I0),
// I2 = int N^2. All integrals are exact sums over the pieces.
double delta3_exact(std::vector<double> centered, double L) {
    std::sort(centered.begin(), centered.end());
    const double lo = -L / 2, hi = L / 2;
    long double I0 = 0, I1 = 0, I2 = 0;
    double left = lo;
    for (size_t i = 0; i <= centered.size(); ++i) {
        const double right = i < centered.size() ? centered[i] : hi;
        const long double n = (long double)i;
        I0 += n * (right - left);
        I1 += n * ((long double)right * right - (long double)left * left) / 2.0L;
        I2 += n * n * (right - left);
        left = right;
    }
    const long double a = 12.0L * I1 / ((long double)L * L * L);
    const long double b = I0 / L;
    return (double)((I2 - a * I1 - b * I0) / L);
}

}  // namespace

TEST_CASE("closed form matches the exact-integration oracle") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 50; ++trial) {
        const double L = 0.5 + 20.0 * (double)(rng() >> 11) * 0x1.0p-53;
        const size_t n = 1 + rng() % 20;
        std::vector<double> levels(n);
        for (auto& e : levels)
            e = 100.0 + L * (double)(rng() >> 11) * 0x1.0p-53;
        const auto w = UnfoldedWindow::make(100.0, L, levels);
        REQUIRE(w.levels.size() == n);
        const double got = delta3_unfolded(w);
        const double want = delta3_exact(w.centered, L);
        CHECK(got == doctest::Approx(want).epsilon(1e-6));
        CHECK(got >= -1e-9 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("single level at the window center") {
    const auto w = UnfoldedWindow::make(0.0, 1.0, {0.5});
    CHECK(delta3_unfolded(w) == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
    CHECK(delta3_unfolded(w) == doctest::Approx(delta3_exact(w.centered, 1.0)).epsilon(1e-12));
}

TEST_CASE("empty window fits exactly") {
    const auto w = UnfoldedWindow::make(0.0, 10.0, {});
    CHECK(delta3_unfolded(w) == 0.0);
}

TEST_CASE("picket fence is rigid: about 1/12 at L = 1000") {
    std::vector<double> levels;
    for (int k = 0; k < 1000; ++k) levels.push_back(k + 0.5);
    const auto w = UnfoldedWindow::make(0.0, 1000.0, levels);
    CHECK(delta3_unfolded(w) == doctest::Approx(1.0 / 12.0).epsilon(0.02));
}

TEST_CASE("Poisson levels average to L/15") {
    std::mt19937_64 rng(777);
    std::exponential_distribution<double> exp1(1.0);
    const double L = 100.0;
    double sum = 0;
    const int windows = 200;
    for (int t = 0; t < windows; ++t) {
        std::vector<double> levels;
        double e = 0;
        while ((e += exp1(rng)) <= L) levels.push_back(e);
        sum += delta3_unfolded(UnfoldedWindow::make(0.0, L, levels));
    }
    CHECK(sum / windows == doctest::Approx(L / 15.0).epsilon(0.05));
}

TEST_CASE("translation invariance") {
    std::vector<double> levels{1.2, 2.7, 3.1, 5.9, 8.4};
    const double v0 = delta3_unfolded(UnfoldedWindow::make(1.0, 8.0, levels));
    for (double shift : {10.0, 1e3, 1e6}) {
        auto moved = levels;
        for (auto& e : moved) e += shift;
        const double v = delta3_unfolded(UnfoldedWindow::make(1.0 + shift, 8.0, moved));
        CHECK(v == doctest::Approx(v0).epsilon(1e-9));
    }
}

TEST_CASE("window construction filters and sorts") {
    const auto w = UnfoldedWindow::make(10.0, 5.0, {3.0, 14.9, 11.0, 10.0, 16.0, 12.5});
    CHECK(w.levels == std::vector<double>{11.0, 12.5, 14.9});
    for (double e : w.centered) CHECK(std::abs(e) <= 2.5);
    CHECK_THROWS(UnfoldedWindow::make(0.0, -1.0, {}));
}

TEST_CASE("smooth_fit_ab") {
    // L -> 0: a tends to d/dx (x/ln x)
    const double x = 1e6;
    const auto [a, b] = smooth_fit_ab(x, 1.0);
    const double lx = std::log(x);
    CHECK(a == doctest::Approx(1.0 / lx - 1.0 / (lx * lx)).epsilon(1e-6));
    // large-scale expansion of the least-squares slope of t/ln t over
    // [X - L/2, X + L/2]: a = 1/lX - 1/lX^2 - L/(2 X lX^2) + ...
    const double X = 1e13, L = 1e10;
    const auto [A, B] = smooth_fit_ab(X, L);
    const double lX = std::log(X);
    CHECK(A == doctest::Approx(1.0 / lX - 1.0 / (lX * lX) - L / (2.0 * X * lX * lX)).epsilon(1e-5));
    CHECK(B == doctest::Approx(X / lX).epsilon(1e-6));
    CHECK_THROWS(smooth_fit_ab(2.0, 0.0));
}

TEST_CASE("delta3_sampled degenerate staircases") {
    StaircaseSample s;
    s.x0 = 0;
    s.h = 10;
    s.values.assign(100, 42);
    CHECK(delta3_sampled(s, 0, 1000) == doctest::Approx(0.0).scale(42.0 * 42.0).epsilon(1e-12));

    // exactly linear staircase: only the sawtooth discretization residual
    // survives. The fitted line passes through the grid points, so each cell
    // contributes int_0^h (a t)^2 dt and the total is (a h)^2 / 3.
    StaircaseSample lin;
    lin.x0 = 0;
    lin.h = 2;
    for (int k = 0; k < 512; ++k) lin.values.push_back((uint64_t)(3 * k));
    const double v = delta3_sampled(lin, 0, 1024);
    CHECK(v == doctest::Approx(3.0).epsilon(1e-9));  // (1.5 * 2)^2 / 3

    StaircaseSample lin2;  // same slope, doubled step: residual quadruples
    lin2.x0 = 0;
    lin2.h = 4;
    for (int k = 0; k < 512; ++k) lin2.values.push_back((uint64_t)(6 * k));
    CHECK(delta3_sampled(lin2, 0, 2048) == doctest::Approx(12.0).epsilon(1e-9));

    CHECK_THROWS(delta3_sampled(s, 0, 999));   // L not multiple of h
    CHECK_THROWS(delta3_sampled(s, 5, 100));   // x off grid
    CHECK_THROWS(delta3_sampled(s, 0, 10));    // fewer than 2 points
    CHECK_THROWS(delta3_sampled(s, 0, 10000)); // not covered
}

TEST_CASE("leading_term") {
    CHECK(leading_term(1e16, 1e9) == doctest::Approx(2.45588e14).epsilon(1e-5));
    CHECK(leading_term(1e6, 200.0) == doctest::Approx(4.0 * leading_term(1e6, 100.0)).epsilon(1e-12));
}

TEST_CASE("delta3_sampled on real primes follows the leading term") {
    const uint64_t x = 1u << 24, h = 256;
    SieveConfig cfg;
    cfg.limit = x + (1u << 21);
    SegmentedSieve sieve(cfg);
    const auto sample = sieve.sample_staircase(x, h, (1u << 20) / h + 1);
    const double lead = leading_term((double)x, (double)h);
    // small-L regime: L < 4h ln(x)/3
    const uint64_t L_cap = (uint64_t)(4.0 * (double)h * std::log((double)x) / 3.0);
    int checked = 0;
    for (uint64_t L = 4 * h; L <= L_cap; L *= 2) {
        const double v = delta3_sampled(sample, x, L);
        CHECK(v > 0.0);
        CHECK(v == doctest::Approx(lead).epsilon(0.25));
        ++checked;
    }
    CHECK(checked >= 3);
}

TEST_CASE("unfolding inversion and prime windows") {
    // Newton inversion round-trips through both smooth maps
    for (double target : {1e4, 1e6, 5e7}) {
        const double p_li = invert_unfolding(target, UnfoldMode::li);
        CHECK(std::abs(li(p_li) - target) < 1.0);
        const double p_r = invert_unfolding(target, UnfoldMode::r);
        CHECK(std::abs(riemann_r(p_r) - target) < 1.0);
    }

    const double x = 1e5, L = 4096;
    SieveConfig cfg;
    cfg.limit = 2200000;
    SegmentedSieve sieve(cfg);
    for (auto mode : {UnfoldMode::li, UnfoldMode::r}) {
        const auto levels = unfolded_levels_in(sieve, x, L, mode);
        REQUIRE(!levels.empty());
        for (size_t i = 0; i < levels.size(); ++i) {
            CHECK(levels[i] > x);
            CHECK(levels[i] <= x + L);
            if (i) CHECK(levels[i] > levels[i - 1]);
        }
        // unfolded density is 1 per unit length
        CHECK((double)levels.size() == doctest::Approx(L).epsilon(0.05));
        const double v = delta3_primes(sieve, x, L, mode);
        CHECK(v >= 0.0);
    }

    // insufficient sieve range names the required bound
    SieveConfig tiny;
    tiny.limit = 1000;
    SegmentedSieve small(tiny);
    CHECK_THROWS_WITH_AS(
        (void)delta3_primes(small, 1e5, 4096, UnfoldMode::r),
        doctest::Contains("need primes up to"), std::out_of_range);
}

TEST_CASE("rigidity CSV") {
    RigidityCurve c;
    c.method = RigidityCurve::Method::sampled;
    c.x = 1e6;
    c.h = 100;
    c.points = {{100.0, 1.5}, {200.0, 2.5}};
    write_rigidity_csv(c, "rigidity_test.csv");
    std::ifstream f("rigidity_test.csv");
    std::string header;
    std::getline(f, header);
    CHECK(header == "L,delta3,method,x,h,ensemble_size");
    std::string row;
    std::getline(f, row);
    CHECK(row == "100,1.5,sampled,1000000,100,1");
    f.close();
    std::remove("rigidity_test.csv");
}
