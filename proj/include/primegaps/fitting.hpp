#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "primegaps/gapstats.hpp"

namespace primegaps {

struct LinearFit {
    double a = 0;  // slope
    double b = 0;  // intercept
    double residual_ss = 0;
};

struct ExpFit {
    double prefactor = 0;  // a(x)
    double slope = 0;      // s(x)
    double u_lo = 0, u_hi = 0;
    size_t n_points = 0;
};

// Unweighted least-squares line through (x_k, y_k).
LinearFit linear_lsq(const std::vector<std::pair<double, double>>& points);

// Fit P(d) ~ alpha + beta*cos(2*pi*d/6) over d = 2, 4, ..., d_max.
std::pair<double, double> cosine_basis_fit(uint64_t d_max);

// Fit a*exp(-s*u) to the scaled curve on u in [u_lo, u_hi] via a linear fit
// in (u, ln t). Optional weighting by tau counts is deliberately absent.
ExpFit exp_fit(const ScaledCurve& curve, double u_lo = 1.0, double u_hi = 4.0);

}  // namespace primegaps
