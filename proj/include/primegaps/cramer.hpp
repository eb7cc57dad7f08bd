#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "primegaps/rigidity.hpp"

namespace primegaps {

// "Artificial primes": integer k is accepted with probability 1/ln k
// (2/ln k over odd k only when include_even is false). Levels are unfolded
// through R(k) and clipped to the window (x, x + L_max].
struct CramerConfig {
    uint64_t k0 = 0;       // first candidate; 0 = first k with R(k) > x
    double x = 1e6;        // window start in unfolded coordinates
    double L_max = 16384;  // largest window length of interest
    uint64_t seed = 0;
    bool include_even = true;
    uint32_t samples = 100;
    unsigned threads = 0;  // 0 = hardware concurrency
};

struct CramerEnsemble {
    std::vector<RigidityCurve> per_sample_curves;
    RigidityCurve mean_curve;
    std::vector<double> stderr_;  // standard error of the mean per L
};

// Smallest k with R(k) > x.
uint64_t find_first_k(double x);

// Unfolded levels R(k) of one accepted sample, in (x, x + L_max], ascending.
// Fully determined by (config.seed, sample_index).
std::vector<double> generate_sample(const CramerConfig& config, uint32_t sample_index);

// Per-sample delta3 curves over L_grid plus their pointwise mean. Samples run
// in parallel; the reduction order is fixed, so the mean is reproducible.
CramerEnsemble ensemble_delta3(const CramerConfig& config,
                               const std::vector<double>& L_grid);

// CSV: "L,mean_delta3,stderr,n_samples".
void write_ensemble_csv(const CramerEnsemble& e, const std::string& path);

}  // namespace primegaps
