#include "primegaps/predictions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "primegaps/specfun.hpp"

namespace primegaps {

double tau_expected(uint64_t d, uint64_t x, uint64_t pi_x, TauVariant variant,
                    bool include_small_d_exponential) {
    if (d < 2 || d % 2) throw std::domain_error("tau_expected: d must be even and >= 2");
    const double xd = (double)x;
    const double pi = variant == TauVariant::pi_based ? (double)pi_x : xd / std::log(xd);
    if (variant == TauVariant::log_based && !(xd > std::exp(1.0)))
        throw std::domain_error("tau_expected: log-based variant needs x > e");
    const double C2 = Constants::get().twin_constant;
    const double base = C2 * pi * pi / xd;
    if (d <= 4)
        return include_small_d_exponential ? base * std::exp(-(double)d * pi / xd) : base;
    return base * singular_series(d) * std::exp(-(double)d * pi / xd);
}

double tau_from_pi_d(double pi_d, uint64_t d, double x) {
    if (d < 6 || d % 2)
        throw std::domain_error("tau_from_pi_d: relation stated only for even d >= 6");
    if (!(x > std::exp(1.0))) throw std::domain_error("tau_from_pi_d: needs x > e");
    return pi_d * std::exp(-(double)d / std::log(x));
}

double gmax_expected(uint64_t x, uint64_t pi_x) {
    if (pi_x < 2) throw std::domain_error("gmax_expected: need pi_x >= 2");
    const double xd = (double)x;
    const double pd = (double)pi_x;
    const double paren = 2.0 * std::log(pd) - std::log(xd) + Constants::get().c_max_gap;
    if (!(paren > 0))
        throw std::domain_error("gmax_expected: degenerate range at x=" + std::to_string(x));
    return xd / pd * paren;
}

}  // namespace primegaps
