#include "primegaps/gapstats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "primegaps/specfun.hpp"

namespace primegaps {

uint64_t GapTable::tau_sum() const {
    uint64_t s = 0;
    for (const auto& [d, c] : counts) s += c;
    return s;
}

const GapTable& CheckpointSeries::at_threshold(uint64_t x) const {
    for (const auto& t : tables)
        if (t.x == x) return t;
    throw std::out_of_range("no checkpoint at x=" + std::to_string(x));
}

CheckpointSeries accumulate(const SegmentedSieve& sieve,
                            const std::vector<uint64_t>& checkpoints) {
    if (checkpoints.empty()) throw std::invalid_argument("accumulate: no checkpoints");
    for (size_t i = 1; i < checkpoints.size(); ++i)
        if (checkpoints[i] <= checkpoints[i - 1])
            throw std::invalid_argument("accumulate: checkpoints must be strictly increasing");

    CheckpointSeries series;
    series.tables.reserve(checkpoints.size());

    // dense running counts indexed by d/2; snapshots convert to sparse maps
    std::vector<uint64_t> dense(512, 0);
    uint64_t running_max = 0, running_max_prime = 0;
    uint64_t seen = 0;  // primes processed so far
    uint64_t prev = 0;  // previous prime, 0 before first
    size_t c = 0;

    auto flush_pair = [&](uint64_t q, uint64_t p) {
        if (q < 3) return;  // skips the (2,3) gap
        const uint64_t d = p - q;
        if (d / 2 >= dense.size()) dense.resize(std::max(dense.size() * 2, d / 2 + 1), 0);
        ++dense[d / 2];
        if (d > running_max) {
            running_max = d;
            running_max_prime = q;
        }
    };
    auto snapshot = [&](uint64_t x) {
        GapTable t;
        t.x = x;
        t.pi_x = seen;
        t.max_gap = running_max;
        t.max_gap_prime = running_max_prime;
        for (uint64_t i = 1; i < dense.size(); ++i)
            if (dense[i]) t.counts.emplace(2 * i, dense[i]);
        series.tables.push_back(std::move(t));
    };

    sieve.for_each_prime([&](uint64_t p) {
        bool flushed = prev == 0;
        while (c < checkpoints.size() && checkpoints[c] < p) {
            // pair (prev, p) belongs to this checkpoint only if prev < it
            if (!flushed && prev < checkpoints[c]) {
                flush_pair(prev, p);
                flushed = true;
            }
            snapshot(checkpoints[c]);
            ++c;
        }
        if (!flushed) flush_pair(prev, p);
        ++seen;
        prev = p;
    });

    if (c < checkpoints.size())
        throw std::runtime_error(
            "accumulate: incomplete data, prime stream (limit " +
            std::to_string(sieve.limit()) + ") ends before checkpoint " +
            std::to_string(checkpoints[c]) + " is passed by a prime");
    return series;
}

std::pair<uint64_t, uint64_t> max_gap(const CheckpointSeries& series, uint64_t x) {
    const GapTable& t = series.at_threshold(x);
    if (t.max_gap == 0)
        throw std::runtime_error("max_gap: no gap recorded below x=" + std::to_string(x));
    return {t.max_gap, t.max_gap_prime};
}

double unfold_gap(uint64_t p_n, uint64_t d_n) {
    if (p_n < 3 || d_n < 2 || d_n % 2)
        throw std::domain_error("unfold_gap: need p_n >= 3 and even d_n >= 2");
    const double p = (double)p_n;
    const double d = (double)d_n;
    return d / (std::log(p) + d / p);
}

UnfoldedHistogram unfold_histogram(const SegmentedSieve& sieve, uint64_t limit,
                                   double bin_width, UnfoldedHistogram::Source mode) {
    if (!(bin_width > 0)) throw std::invalid_argument("unfold_histogram: bin_width must be > 0");
    if (limit > sieve.limit()) throw std::out_of_range("unfold_histogram: limit beyond sieve");
    UnfoldedHistogram h;
    h.bin_width = bin_width;
    h.source = mode;
    auto smooth = [&](double p) {
        return mode == UnfoldedHistogram::Source::li_unfold ? li(p) : riemann_r(p);
    };
    double r_prev = 0;
    bool have_prev = false;
    sieve.for_each_prime([&](uint64_t p) {
        if (p >= limit) return;
        if (p < 3) return;  // unfolding starts at 3; (2,3) gap skipped anyway
        const double r = smooth((double)p);
        if (have_prev) {
            const double D = r - r_prev;
            ++h.bins[(int64_t)std::floor(D / bin_width)];
            ++h.total;
            h.max_value = std::max(h.max_value, D);
        }
        r_prev = r;
        have_prev = true;
    });
    return h;
}

ScaledCurve rescale(const GapTable& table, uint64_t min_count) {
    ScaledCurve out;
    out.x = table.x;
    out.min_count_filter = min_count;
    const double C2 = Constants::get().twin_constant;
    const double x = (double)table.x;
    const double pi_x = (double)table.pi_x;
    for (const auto& [d, tau] : table.counts) {
        if (tau <= min_count) continue;
        out.u.push_back((double)d * pi_x / x);
        out.t.push_back(x * (double)tau / (C2 * singular_series(d) * pi_x * pi_x));
    }
    return out;
}

IntervalCountHistogram gallagher_counts(const SegmentedSieve& sieve, uint64_t h,
                                        uint64_t N) {
    if (h < 1) throw std::invalid_argument("gallagher_counts: h must be >= 1");
    if (N + h >= sieve.limit())
        throw std::out_of_range("gallagher_counts: need sieve range beyond N+h");
    // primality bitmap over [0, N+h]
    std::vector<uint8_t> is_prime(N + h + 1, 0);
    sieve.for_each_prime([&](uint64_t p) {
        if (p <= N + h) is_prime[p] = 1;
    });
    IntervalCountHistogram out;
    out.h = h;
    out.N = N;
    out.lambda = (double)h / std::log((double)N);
    // sliding window (n, n+h]
    uint64_t k = 0;
    for (uint64_t v = 1; v <= h; ++v) k += is_prime[v];
    std::vector<uint64_t> dense(h + 2, 0);
    for (uint64_t n = 0; n < N; ++n) {
        ++dense[k];
        k += is_prime[n + 1 + h];
        k -= is_prime[n + 1];
    }
    for (uint64_t i = 0; i < dense.size(); ++i)
        if (dense[i]) out.counts.emplace(i, dense[i]);
    return out;
}

std::string tau_file_name(uint64_t x) {
    if (x >= 2 && (x & (x - 1)) == 0) {
        int k = 0;
        for (uint64_t v = x; v > 1; v >>= 1) ++k;
        return "tau_x" + std::to_string(k) + ".csv";
    }
    return "tau_" + std::to_string(x) + ".csv";
}

void write_gap_table_csv(const GapTable& t, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << "d,tau\n";
    for (const auto& [d, c] : t.counts) f << d << ',' << c << '\n';
    if (!f) throw std::runtime_error("write failed: " + path);
}

GapTable read_gap_table_csv(const std::string& path, uint64_t x) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(f, line) || line != "d,tau")
        throw std::runtime_error(path + ":1: expected header 'd,tau'");
    GapTable t;
    t.x = x;
    size_t lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        unsigned long long d, c;
        if (std::sscanf(line.c_str(), "%llu,%llu", &d, &c) != 2)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": malformed row '" + line + "'");
        t.counts.emplace(d, c);
        if (c > 0) t.max_gap = std::max<uint64_t>(t.max_gap, d);
    }
    t.pi_x = t.tau_sum() + 1;
    return t;
}

void write_series(const CheckpointSeries& s, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    for (const auto& t : s.tables)
        write_gap_table_csv(t, (fs::path(dir) / tau_file_name(t.x)).string());
    std::ofstream m(fs::path(dir) / "manifest.csv");
    if (!m) throw std::runtime_error("cannot write manifest in " + dir);
    m << "x,pi,G,G_prime,file\n";
    for (const auto& t : s.tables)
        m << t.x << ',' << t.pi_x << ',' << t.max_gap << ',' << t.max_gap_prime << ','
          << tau_file_name(t.x) << '\n';
    if (!m) throw std::runtime_error("manifest write failed in " + dir);
}

CheckpointSeries read_series(const std::string& dir) {
    namespace fs = std::filesystem;
    std::ifstream m(fs::path(dir) / "manifest.csv");
    if (!m) throw std::runtime_error("cannot open manifest in " + dir);
    std::string line;
    if (!std::getline(m, line) || line != "x,pi,G,G_prime,file")
        throw std::runtime_error(dir + "/manifest.csv:1: bad header");
    CheckpointSeries s;
    size_t lineno = 1;
    while (std::getline(m, line)) {
        ++lineno;
        if (line.empty()) continue;
        unsigned long long x, pi, G, Gp;
        char file[128];
        if (std::sscanf(line.c_str(), "%llu,%llu,%llu,%llu,%127s", &x, &pi, &G, &Gp, file) != 5)
            throw std::runtime_error(dir + "/manifest.csv:" + std::to_string(lineno) +
                                     ": malformed row '" + line + "'");
        GapTable t = read_gap_table_csv((fs::path(dir) / file).string(), x);
        if (t.pi_x != pi)
            throw std::runtime_error(dir + "/" + file + ": tau sum + 1 = " +
                                     std::to_string(t.pi_x) + " but manifest says pi=" +
                                     std::to_string(pi));
        if (t.max_gap != G)
            throw std::runtime_error(dir + "/" + file + ": max gap mismatch vs manifest");
        t.max_gap_prime = Gp;
        s.tables.push_back(std::move(t));
    }
    return s;
}

void write_scaled_curve_csv(const ScaledCurve& c, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << "u,t\n";
    f.precision(17);
    for (size_t i = 0; i < c.u.size(); ++i) f << c.u[i] << ',' << c.t[i] << '\n';
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace primegaps
