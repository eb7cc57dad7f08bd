#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "primegaps/cramer.hpp"
#include "primegaps/specfun.hpp"

using namespace primegaps;

TEST_CASE("find_first_k reproduces the published R crossing") {
    CHECK(find_first_k(1e10) == 252097715777ULL);
    const uint64_t k = find_first_k(1e6);
    CHECK(riemann_r((double)k) > 1e6);
    CHECK(riemann_r((double)(k - 1)) <= 1e6);

    // the first *prime* past the 1e8 crossing is the published 2038076627
    uint64_t p = find_first_k(1e8);
    auto is_prime = [](uint64_t n) {
        if (n % 2 == 0) return n == 2;
        for (uint64_t q = 3; q * q <= n; q += 2)
            if (n % q == 0) return false;
        return true;
    };
    while (!is_prime(p)) ++p;
    CHECK(p == 2038076627ULL);
}

TEST_CASE("samples are deterministic in (seed, index)") {
    CramerConfig cfg;
    cfg.x = 1e5;
    cfg.L_max = 512;
    cfg.seed = 99;
    const auto a = generate_sample(cfg, 3);
    const auto b = generate_sample(cfg, 3);
    CHECK(a == b);  // bit-exact
    const auto c = generate_sample(cfg, 4);
    CHECK(a != c);
    cfg.seed = 100;
    CHECK(generate_sample(cfg, 3) != a);
}

TEST_CASE("levels land in the window, sorted") {
    CramerConfig cfg;
    cfg.x = 1e5;
    cfg.L_max = 1024;
    cfg.seed = 7;
    const auto s = generate_sample(cfg, 0);
    REQUIRE(!s.empty());
    for (size_t i = 0; i < s.size(); ++i) {
        CHECK(s[i] > cfg.x);
        CHECK(s[i] <= cfg.x + cfg.L_max);
        if (i) CHECK(s[i] > s[i - 1]);
    }
    // unit mean density after unfolding
    CHECK((double)s.size() == doctest::Approx(cfg.L_max).epsilon(0.15));
}

TEST_CASE("acceptance rate matches the Bernoulli model") {
    // candidates k in [1e6, 2e6]: expected count Li(2e6) - Li(1e6)
    CramerConfig cfg;
    cfg.k0 = 1000000;
    cfg.x = riemann_r(1e6);
    cfg.L_max = riemann_r(2e6) - cfg.x;
    cfg.seed = 2024;
    double expected = 0, var = 0;
    for (uint64_t k = 1000000; k < 2000000; k += 1000) {
        const double p = 1.0 / std::log((double)k);
        expected += 1000 * p;
        var += 1000 * p * (1 - p);
    }
    for (uint32_t idx = 0; idx < 3; ++idx) {
        const auto s = generate_sample(cfg, idx);
        CHECK(std::abs((double)s.size() - expected) < 4.0 * std::sqrt(var));
    }
}

TEST_CASE("odd-only variant keeps the density") {
    CramerConfig cfg;
    cfg.x = 1e5;
    cfg.L_max = 2048;
    cfg.seed = 11;
    cfg.include_even = false;
    const auto s = generate_sample(cfg, 0);
    for (size_t i = 1; i < s.size(); ++i) CHECK(s[i] > s[i - 1]);
    CHECK((double)s.size() == doctest::Approx(cfg.L_max).epsilon(0.15));
}

TEST_CASE("ensemble mean, stderr scaling and reproducibility") {
    CramerConfig cfg;
    cfg.x = 1e5;
    cfg.L_max = 256;
    cfg.seed = 5;
    const std::vector<double> grid{64.0, 128.0, 256.0};

    cfg.samples = 160;
    const auto big = ensemble_delta3(cfg, grid);
    REQUIRE(big.mean_curve.points.size() == grid.size());
    CHECK(big.per_sample_curves.size() == 160);
    CHECK(big.mean_curve.ensemble_size == 160);
    for (size_t i = 0; i < grid.size(); ++i) {
        // mean over 160 samples sits near L/15
        CHECK(big.mean_curve.points[i].second ==
              doctest::Approx(grid[i] / 15.0).epsilon(0.35));
        // mean equals the hand average of the per-sample values
        double s = 0;
        for (const auto& c : big.per_sample_curves) s += c.points[i].second;
        CHECK(big.mean_curve.points[i].second ==
              doctest::Approx(s / 160.0).epsilon(1e-12));
    }

    // deterministic under re-run and thread-count changes
    auto again = ensemble_delta3(cfg, grid);
    for (size_t i = 0; i < grid.size(); ++i)
        CHECK(again.mean_curve.points[i].second == big.mean_curve.points[i].second);
    cfg.threads = 1;
    auto serial = ensemble_delta3(cfg, grid);
    for (size_t i = 0; i < grid.size(); ++i)
        CHECK(serial.mean_curve.points[i].second == big.mean_curve.points[i].second);

    // stderr shrinks like 1/sqrt(samples)
    cfg.threads = 0;
    cfg.samples = 10;
    const auto small = ensemble_delta3(cfg, grid);
    const double ratio = small.stderr_[2] / big.stderr_[2];
    CHECK(ratio > 1.6);  // ideal 4.0, loose statistical band
    CHECK(ratio < 10.0);
}

TEST_CASE("ensemble CSV format") {
    CramerConfig cfg;
    cfg.x = 1e5;
    cfg.L_max = 64;
    cfg.samples = 4;
    cfg.seed = 1;
    const auto ens = ensemble_delta3(cfg, {32.0, 64.0});
    write_ensemble_csv(ens, "ensemble_test.csv");
    std::ifstream f("ensemble_test.csv");
    std::string header;
    std::getline(f, header);
    CHECK(header == "L,mean_delta3,stderr,n_samples");
    size_t rows = 0;
    for (std::string row; std::getline(f, row);) ++rows;
    CHECK(rows == 2);
    f.close();
    std::remove("ensemble_test.csv");
}
