#include "primegaps/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

namespace primegaps {

namespace {

std::vector<uint32_t> simple_odd_primes(uint32_t up_to) {
    // odd primes <= up_to via a plain byte sieve
    std::vector<uint32_t> out;
    if (up_to < 3) return out;
    std::vector<uint8_t> comp(up_to + 1, 0);
    for (uint32_t i = 3; (uint64_t)i * i <= up_to; i += 2) {
        if (comp[i]) continue;
        for (uint64_t j = (uint64_t)i * i; j <= up_to; j += 2 * i) comp[j] = 1;
    }
    for (uint32_t i = 3; i <= up_to; i += 2)
        if (!comp[i]) out.push_back(i);
    return out;
}

}  // namespace

SegmentedSieve::SegmentedSieve(SieveConfig cfg) : cfg_(cfg) {
    if (cfg_.segment_bytes == 0)
        throw std::invalid_argument("sieve: segment_size must be positive");
    if (cfg_.limit >= 2) {
        const uint64_t max_value = cfg_.limit - 1;
        const auto root = (uint32_t)std::sqrt((double)max_value);
        uint32_t r = root + 2;  // guard against sqrt rounding
        while ((uint64_t)r * r > max_value) --r;
        base_primes_ = simple_odd_primes(r);
        total_odd_ = cfg_.limit / 2;  // odd numbers 1,3,.. < limit
    } else {
        total_odd_ = 0;
    }
    bits_per_segment_ = cfg_.segment_bytes * 8;
    n_segments_ = total_odd_ ? (total_odd_ + bits_per_segment_ - 1) / bits_per_segment_ : 0;
}

void SegmentedSieve::sieve_segment(size_t index, Segment& out) const {
    const uint64_t m0 = (uint64_t)index * bits_per_segment_;
    const size_t bits = (size_t)std::min<uint64_t>(bits_per_segment_, total_odd_ - m0);
    out.m0 = m0;
    out.bits = bits;
    out.words.assign((bits + 63) / 64, ~uint64_t{0});
    // mask tail bits beyond the range
    if (bits % 64) out.words.back() = (uint64_t{1} << (bits % 64)) - 1;
    if (index == 0 && bits > 0) out.words[0] &= ~uint64_t{1};  // 1 is not prime

    const uint64_t low_value = 2 * m0 + 1;
    const uint64_t high_value = 2 * (m0 + bits) + 1;  // exclusive
    for (uint32_t p : base_primes_) {
        const uint64_t p2 = (uint64_t)p * p;
        if (p2 >= high_value) break;
        uint64_t q = std::max<uint64_t>(p2, ((low_value + p - 1) / p) * p);
        if (q % 2 == 0) q += p;  // odd multiples only
        for (uint64_t m = (q - 1) / 2 - m0; m < bits; m += p)
            out.words[m >> 6] &= ~(uint64_t{1} << (m & 63));
    }
}

void SegmentedSieve::run_segments(
    uint64_t from, const std::function<bool(const Segment&)>& sink) const {
    if (n_segments_ == 0) return;
    const size_t first =
        from <= 1 ? 0 : std::min<size_t>(((from - 1) / 2) / bits_per_segment_, n_segments_);
    if (first >= n_segments_) return;

    unsigned threads = cfg_.threads ? cfg_.threads : std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    const size_t n_to_do = n_segments_ - first;
    threads = (unsigned)std::min<size_t>(threads, n_to_do);

    if (threads <= 1) {
        Segment seg;
        for (size_t i = first; i < n_segments_; ++i) {
            sieve_segment(i, seg);
            if (!sink(seg)) return;
        }
        return;
    }

    // Workers claim segment indices and park results; the caller consumes in
    // order. Lookahead is bounded so memory stays at O(threads) segments.
    std::mutex mu;
    std::condition_variable cv;
    std::map<size_t, Segment> ready;
    std::atomic<size_t> next_claim{first};
    std::atomic<size_t> next_consume{first};
    std::atomic<bool> stop{false};
    const size_t lookahead = threads * 2;

    auto worker = [&] {
        Segment seg;
        while (!stop.load(std::memory_order_relaxed)) {
            const size_t i = next_claim.fetch_add(1);
            if (i >= n_segments_) return;
            while (i >= next_consume.load(std::memory_order_acquire) + lookahead) {
                if (stop.load(std::memory_order_relaxed)) return;
                std::unique_lock<std::mutex> lk(mu);
                cv.wait_for(lk, std::chrono::milliseconds(5));
            }
            sieve_segment(i, seg);
            {
                std::lock_guard<std::mutex> lk(mu);
                ready.emplace(i, std::move(seg));
            }
            cv.notify_all();
            seg = Segment{};
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);

    bool keep_going = true;
    for (size_t i = first; i < n_segments_ && keep_going; ++i) {
        Segment seg;
        {
            std::unique_lock<std::mutex> lk(mu);
            cv.wait(lk, [&] { return ready.count(i) != 0; });
            seg = std::move(ready[i]);
            ready.erase(i);
        }
        next_consume.store(i + 1, std::memory_order_release);
        cv.notify_all();
        keep_going = sink(seg);
    }
    stop.store(true);
    cv.notify_all();
    for (auto& t : pool) t.join();
}

uint64_t SegmentedSieve::prime_count(uint64_t x) const {
    if (x >= cfg_.limit)
        throw std::out_of_range("prime_count: x=" + std::to_string(x) +
                                " beyond sieved range (limit " +
                                std::to_string(cfg_.limit) + ")");
    if (x < 2) return 0;
    uint64_t count = 1;  // the prime 2
    const uint64_t m_max = x >= 1 ? (x - 1) / 2 : 0;  // odd n=2m+1 <= x
    run_segments(0, [&](const Segment& seg) {
        if (seg.m0 > m_max) return false;
        const uint64_t last = std::min<uint64_t>(seg.m0 + seg.bits - 1, m_max);
        const size_t n_bits = (size_t)(last - seg.m0 + 1);
        const size_t full_words = n_bits / 64;
        for (size_t w = 0; w < full_words; ++w) count += std::popcount(seg.words[w]);
        if (n_bits % 64) {
            const uint64_t mask = (uint64_t{1} << (n_bits % 64)) - 1;
            count += std::popcount(seg.words[full_words] & mask);
        }
        return last < m_max;
    });
    return count;
}

StaircaseSample SegmentedSieve::sample_staircase(uint64_t x0, uint64_t h,
                                                 size_t n_samples) const {
    if (h == 0) throw std::invalid_argument("sample_staircase: h must be >= 1");
    if (n_samples == 0) throw std::invalid_argument("sample_staircase: n_samples must be >= 1");
    const uint64_t last_x = x0 + (uint64_t)(n_samples - 1) * h;
    if (last_x < x0 || last_x >= cfg_.limit)
        throw std::out_of_range("sample_staircase: grid exceeds sieved range");

    StaircaseSample out;
    out.x0 = x0;
    out.h = h;
    out.values.resize(n_samples);

    // single in-order pass; count primes <= each grid point
    size_t k = 0;
    uint64_t count = 0;
    auto flush_boundaries_below = [&](uint64_t value) {
        // all primes <= grid point already counted once we pass it
        while (k < n_samples && x0 + k * h < value) out.values[k++] = count;
    };
    if (cfg_.limit > 2) {
        flush_boundaries_below(2);
        ++count;  // prime 2
    }
    scan_segments(0, [&](uint64_t p) {
        flush_boundaries_below(p);
        ++count;
        return k < n_samples;
    });
    while (k < n_samples) out.values[k++] = count;
    return out;
}

std::vector<uint64_t> SegmentedSieve::primes_in(uint64_t lo, uint64_t hi) const {
    std::vector<uint64_t> out;
    if (hi > cfg_.limit)
        throw std::out_of_range("primes_in: range beyond sieved limit");
    for_each_prime_from(lo, [&](uint64_t p) {
        if (p >= hi) return false;
        out.push_back(p);
        return true;
    });
    return out;
}

namespace {
constexpr char kBasePrimeMagic[8] = {'P', 'G', 'B', 'A', 'S', 'E', '0', '1'};
}

void SegmentedSieve::save_base_primes(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f.write(kBasePrimeMagic, sizeof(kBasePrimeMagic));
    const uint64_t n = base_primes_.size();
    f.write(reinterpret_cast<const char*>(&n), sizeof(n));
    f.write(reinterpret_cast<const char*>(base_primes_.data()),
            (std::streamsize)(n * sizeof(uint32_t)));
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::vector<uint32_t> SegmentedSieve::load_base_primes(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    char magic[8];
    f.read(magic, sizeof(magic));
    if (!f || std::memcmp(magic, kBasePrimeMagic, sizeof(magic)) != 0)
        throw std::runtime_error("not a base-prime checkpoint: " + path);
    uint64_t n = 0;
    f.read(reinterpret_cast<char*>(&n), sizeof(n));
    std::vector<uint32_t> out(n);
    f.read(reinterpret_cast<char*>(out.data()), (std::streamsize)(n * sizeof(uint32_t)));
    if (!f) throw std::runtime_error("truncated base-prime checkpoint: " + path);
    return out;
}

void write_staircase_csv(const StaircaseSample& s, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << "x,pi(x)\n";
    for (size_t k = 0; k < s.values.size(); ++k)
        f << s.x0 + k * s.h << ',' << s.values[k] << '\n';
    if (!f) throw std::runtime_error("write failed: " + path);
}

StaircaseSample read_staircase_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("empty staircase file: " + path);
    StaircaseSample s;
    std::vector<uint64_t> xs;
    size_t lineno = 1;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty()) continue;
        uint64_t x, y;
        if (std::sscanf(line.c_str(), "%llu,%llu", (unsigned long long*)&x,
                        (unsigned long long*)&y) != 2)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": malformed row '" + line + "'");
        xs.push_back(x);
        s.values.push_back(y);
    }
    if (xs.size() < 2) throw std::runtime_error(path + ": need at least two rows");
    s.x0 = xs[0];
    s.h = xs[1] - xs[0];
    if (s.h == 0) throw std::runtime_error(path + ": zero grid step");
    for (size_t k = 1; k < xs.size(); ++k)
        if (xs[k] - xs[k - 1] != s.h)
            throw std::runtime_error(path + ": non-uniform grid step at row " +
                                     std::to_string(k + 1));
    return s;
}

}  // namespace primegaps
