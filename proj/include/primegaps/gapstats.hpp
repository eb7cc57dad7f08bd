#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "primegaps/sieve.hpp"

namespace primegaps {

// Gap counts tau_d(x) at one threshold. A consecutive pair (p_n, p_{n+1})
// counts when 3 <= p_n < x; the (2,3) gap is skipped. With that convention
// sum_d tau_d(x) + 1 = pi(x) exactly for every non-prime x.
struct GapTable {
    uint64_t x = 0;
    std::map<uint64_t, uint64_t> counts;  // even d -> tau_d(x)
    uint64_t pi_x = 0;
    uint64_t max_gap = 0;        // G(x); 0 when no pair recorded
    uint64_t max_gap_prime = 0;  // prime opening the maximal gap

    uint64_t tau(uint64_t d) const {
        auto it = counts.find(d);
        return it == counts.end() ? 0 : it->second;
    }
    uint64_t tau_sum() const;
};

struct CheckpointSeries {
    std::vector<GapTable> tables;  // thresholds strictly increasing

    const GapTable& at_threshold(uint64_t x) const;
};

struct UnfoldedHistogram {
    enum class Source { li_unfold, r_unfold };
    double bin_width = 0;
    std::map<int64_t, uint64_t> bins;  // bin index -> count
    Source source = Source::li_unfold;
    uint64_t total = 0;
    double max_value = 0;  // largest D_n seen
};

// Rescaled points (u = D(x,d), t = T_d(x)) for one threshold.
struct ScaledCurve {
    uint64_t x = 0;
    uint64_t min_count_filter = 0;
    std::vector<double> u;  // d*pi(x)/x, increasing in d
    std::vector<double> t;  // x*tau_d/(C2*P(d)*pi^2)
};

struct IntervalCountHistogram {
    uint64_t h = 0;
    uint64_t N = 0;
    std::map<uint64_t, uint64_t> counts;  // k -> #intervals with exactly k primes
    double lambda = 0;                    // h / ln N
};

// Single ordered pass over the prime stream; checkpoints must be strictly
// increasing and the sieve must contain at least one prime past the last one.
CheckpointSeries accumulate(const SegmentedSieve& sieve,
                            const std::vector<uint64_t>& checkpoints);

// (G(x), prime opening the gap); throws if x is not a checkpoint or the
// table holds no gaps.
std::pair<uint64_t, uint64_t> max_gap(const CheckpointSeries& series, uint64_t x);

// D_n = d_n / (ln p_n + d_n/p_n).
double unfold_gap(uint64_t p_n, uint64_t d_n);

UnfoldedHistogram unfold_histogram(const SegmentedSieve& sieve, uint64_t limit,
                                   double bin_width, UnfoldedHistogram::Source mode);

ScaledCurve rescale(const GapTable& table, uint64_t min_count = 1000);

IntervalCountHistogram gallagher_counts(const SegmentedSieve& sieve, uint64_t h,
                                        uint64_t N);

// CSV persistence: header "d,tau", one row per even d; plus a manifest of
// (x, pi, G, G_prime) per checkpoint.
void write_gap_table_csv(const GapTable& t, const std::string& path);
GapTable read_gap_table_csv(const std::string& path, uint64_t x);
void write_series(const CheckpointSeries& s, const std::string& dir);
CheckpointSeries read_series(const std::string& dir);
std::string tau_file_name(uint64_t x);

void write_scaled_curve_csv(const ScaledCurve& c, const std::string& path);

}  // namespace primegaps
