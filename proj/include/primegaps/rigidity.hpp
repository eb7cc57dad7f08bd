#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "primegaps/sieve.hpp"

namespace primegaps {

// Unfolded levels e_1..e_n inside (x, x+L], stored centered on the window.
struct UnfoldedWindow {
    double x = 0;
    double L = 0;
    std::vector<double> levels;    // sorted ascending, in (x, x+L]
    std::vector<double> centered;  // e_k - (x + L/2)

    // Filters, sorts and centers; levels outside (x, x+L] are dropped.
    static UnfoldedWindow make(double x, double L, std::vector<double> raw_levels);
};

enum class UnfoldMode { li, r };

struct RigidityCurve {
    enum class Method { unfolded, sampled };
    Method method = Method::unfolded;
    double x = 0;
    uint64_t h = 0;  // 0 for the unfolded method
    std::vector<std::pair<double, double>> points;  // (L, delta3)
    uint64_t ensemble_size = 1;
};

// Bohigas-Giannoni closed form on a window of unfolded levels. The second
// term is (1/L^2)(sum e~)^2; n = 0 gives 0 (constant fit to the empty
// staircase).
double delta3_unfolded(const UnfoldedWindow& window);

// Unfolds primes through Li or R and evaluates delta3_unfolded on (x, x+L].
double delta3_primes(const SegmentedSieve& sieve, double x, double L, UnfoldMode mode);

// Collects the unfolded levels in (x, x+L] (exposed for sweeps/ensembles).
std::vector<double> unfolded_levels_in(const SegmentedSieve& sieve, double x, double L,
                                       UnfoldMode mode);

// Straight-line parameters of the smooth staircase x/ln x on (x, x+L),
// from the quarter-point crossings.
std::pair<double, double> smooth_fit_ab(double x, double L);

// Least-squares rigidity on a sampled staircase: (a,b) fitted to
// (k*h, y_k), k = 0..L/h-1, then
//   b^2 + a*b*L + a^2 L^2/3 + (1/L) sum_k [y_k(y_k-2b)h - a y_k (2k+1) h^2].
// L must be a multiple of sample.h and x must sit on the sample grid.
double delta3_sampled(const StaircaseSample& sample, uint64_t x, uint64_t L);

// Leading small-L term h^2 / (3 ln^2 x).
double leading_term(double x, double h);

// Newton inversion of the unfolding map (li or R).
double invert_unfolding(double target, UnfoldMode mode);

void write_rigidity_csv(const RigidityCurve& c, const std::string& path);

}  // namespace primegaps
