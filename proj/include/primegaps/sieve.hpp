#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace primegaps {

struct SieveConfig {
    uint64_t limit = 0;              // exclusive upper bound for primes
    size_t segment_bytes = 1 << 20;  // bitset bytes per segment
    unsigned threads = 0;            // 0 = hardware concurrency
};

// y_k = pi(x0 + k*h) on a uniform grid.
struct StaircaseSample {
    uint64_t x0 = 0;
    uint64_t h = 0;
    std::vector<uint64_t> values;
};

void write_staircase_csv(const StaircaseSample& s, const std::string& path);
StaircaseSample read_staircase_csv(const std::string& path);

// Segmented, odd-only, bit-packed sieve of Eratosthenes. One bit per odd
// integer; 2 is handled specially. Segments are sieved by a worker pool but
// always delivered to consumers in increasing order.
class SegmentedSieve {
public:
    explicit SegmentedSieve(SieveConfig cfg);

    uint64_t limit() const { return cfg_.limit; }
    const std::vector<uint32_t>& base_primes() const { return base_primes_; }

    // Streams every prime < limit in increasing order. F: void(uint64_t).
    template <class F>
    void for_each_prime(F&& f) const {
        if (cfg_.limit > 2) f(2);
        scan_segments(0, [&](uint64_t p) {
            f(p);
            return true;
        });
    }

    // Streams primes >= lo in increasing order until the callback returns
    // false. Only the segments actually touched are sieved.
    template <class F>
    void for_each_prime_from(uint64_t lo, F&& f) const {
        if (lo <= 2 && cfg_.limit > 2) {
            if (!f(uint64_t{2})) return;
        }
        scan_segments(lo, [&](uint64_t p) { return p < lo || f(p); });
    }

    // Exact pi(x); requires x < limit.
    uint64_t prime_count(uint64_t x) const;

    // values[k] = pi(x0 + k*h), k = 0..n_samples-1.
    StaircaseSample sample_staircase(uint64_t x0, uint64_t h, size_t n_samples) const;

    std::vector<uint64_t> primes_in(uint64_t lo, uint64_t hi) const;

    void save_base_primes(const std::string& path) const;
    static std::vector<uint32_t> load_base_primes(const std::string& path);

private:
    // Delivers raw segment bitsets in order starting at the segment
    // containing `from`. Bit j of a segment with odd-index base m0 stands for
    // the odd number 2*(m0 + j) + 1; a set bit means prime.
    struct Segment {
        uint64_t m0;
        size_t bits;
        std::vector<uint64_t> words;
    };
    void run_segments(uint64_t from,
                      const std::function<bool(const Segment&)>& sink) const;

    template <class F>
    void scan_segments(uint64_t from, F&& f) const {
        run_segments(from, [&](const Segment& seg) {
            for (size_t w = 0; w < seg.words.size(); ++w) {
                uint64_t word = seg.words[w];
                while (word) {
                    const int b = __builtin_ctzll(word);
                    word &= word - 1;
                    const uint64_t p = 2 * (seg.m0 + 64 * w + b) + 1;
                    if (!f(p)) return false;
                }
            }
            return true;
        });
    }

    void sieve_segment(size_t index, Segment& out) const;

    SieveConfig cfg_;
    std::vector<uint32_t> base_primes_;  // odd primes <= sqrt(limit-1)
    uint64_t total_odd_;                 // odd numbers represented
    size_t bits_per_segment_;
    size_t n_segments_;
};

}  // namespace primegaps
