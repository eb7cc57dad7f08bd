#pragma once

#include <cstdint>

namespace primegaps {

enum class TauVariant {
    pi_based,   // uses exact pi(x)
    log_based,  // substitutes pi(x) -> x/ln x
};

// Conjectured tau_d(x):
//   C2 * (pi^2/x) * P(d) * exp(-d*pi/x)   for d >= 6
//   C2 * (pi^2/x)                          for d in {2, 4}
// The d in {2,4} branch carries no exponential factor by default;
// include_small_d_exponential applies exp(-d*pi/x) there too.
double tau_expected(uint64_t d, uint64_t x, uint64_t pi_x, TauVariant variant,
                    bool include_small_d_exponential = false);

// tau_d(x) ~ pi_d(x) * exp(-d/ln x), stated for d >= 6 only.
double tau_from_pi_d(double pi_d, uint64_t d, double x);

// G(x) ~ (x/pi(x)) * (2 ln pi(x) - ln x + ln C2); throws when the
// parenthesis is non-positive (tiny x).
double gmax_expected(uint64_t x, uint64_t pi_x);

}  // namespace primegaps
