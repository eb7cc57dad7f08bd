#include "primegaps/cramer.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>
#include <thread>

#include "primegaps/specfun.hpp"

namespace primegaps {

namespace {

uint64_t splitmix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Substream seed for (seed, sample); two mixing rounds keep neighboring
// sample indices uncorrelated.
uint64_t stream_seed(uint64_t seed, uint32_t sample) {
    return splitmix64(splitmix64(seed) ^ (0x100000001b3ULL * (sample + 1)));
}

double uniform01(std::mt19937_64& rng) {
    return (double)(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

uint64_t find_first_k(double x) {
    if (!(x > 0)) throw std::domain_error("find_first_k: x must be > 0");
    uint64_t k = (uint64_t)invert_unfolding(x, UnfoldMode::r);
    while (k > 3 && riemann_r((double)(k - 1)) > x) --k;
    while (riemann_r((double)k) <= x) ++k;
    return k;
}

std::vector<double> generate_sample(const CramerConfig& config, uint32_t sample_index) {
    const uint64_t k0 = config.k0 ? config.k0 : find_first_k(config.x);
    if (k0 < 3) throw std::domain_error("generate_sample: k0 must be >= 3");
    std::mt19937_64 rng(stream_seed(config.seed, sample_index));
    std::vector<double> out;
    const double hi = config.x + config.L_max;
    for (uint64_t k = k0;; ++k) {
        if (!config.include_even && k % 2 == 0) continue;
        const double p = (config.include_even ? 1.0 : 2.0) / std::log((double)k);
        if (!(uniform01(rng) < p)) continue;
        const double r = riemann_r((double)k);
        if (r > hi) break;
        if (r > config.x) out.push_back(r);
    }
    return out;
}

CramerEnsemble ensemble_delta3(const CramerConfig& config,
                               const std::vector<double>& L_grid) {
    if (config.samples < 1) throw std::invalid_argument("ensemble_delta3: samples >= 1");
    for (size_t i = 1; i < L_grid.size(); ++i)
        if (!(L_grid[i] > L_grid[i - 1]))
            throw std::invalid_argument("ensemble_delta3: L grid must increase");

    CramerEnsemble ens;
    ens.per_sample_curves.resize(config.samples);

    auto run_one = [&](uint32_t s) {
        const auto levels = generate_sample(config, s);
        RigidityCurve c;
        c.method = RigidityCurve::Method::unfolded;
        c.x = config.x;
        c.h = 0;
        c.ensemble_size = 1;
        for (double L : L_grid) {
            auto w = UnfoldedWindow::make(config.x, L, levels);
            c.points.emplace_back(L, delta3_unfolded(w));
        }
        ens.per_sample_curves[s] = std::move(c);
    };

    unsigned nt = config.threads ? config.threads : std::thread::hardware_concurrency();
    if (nt == 0) nt = 1;
    nt = std::min<unsigned>(nt, config.samples);
    if (nt <= 1) {
        for (uint32_t s = 0; s < config.samples; ++s) run_one(s);
    } else {
        std::atomic<uint32_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nt; ++t)
            pool.emplace_back([&] {
                for (uint32_t s; (s = next.fetch_add(1)) < config.samples;) run_one(s);
            });
        for (auto& th : pool) th.join();
    }

    // fixed-order compensated reduction: the mean does not depend on which
    // thread finished first
    ens.mean_curve.method = RigidityCurve::Method::unfolded;
    ens.mean_curve.x = config.x;
    ens.mean_curve.h = 0;
    ens.mean_curve.ensemble_size = config.samples;
    const double n = config.samples;
    for (size_t i = 0; i < L_grid.size(); ++i) {
        double sum = 0, comp = 0;
        for (uint32_t s = 0; s < config.samples; ++s) {
            const double y = ens.per_sample_curves[s].points[i].second - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        const double mean = sum / n;
        double ss = 0;
        for (uint32_t s = 0; s < config.samples; ++s) {
            const double d = ens.per_sample_curves[s].points[i].second - mean;
            ss += d * d;
        }
        ens.mean_curve.points.emplace_back(L_grid[i], mean);
        ens.stderr_.push_back(config.samples > 1 ? std::sqrt(ss / (n * (n - 1))) : 0.0);
    }
    return ens;
}

void write_ensemble_csv(const CramerEnsemble& e, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << "L,mean_delta3,stderr,n_samples\n";
    f.precision(17);
    for (size_t i = 0; i < e.mean_curve.points.size(); ++i)
        f << e.mean_curve.points[i].first << ',' << e.mean_curve.points[i].second << ','
          << e.stderr_[i] << ',' << e.mean_curve.ensemble_size << '\n';
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace primegaps
