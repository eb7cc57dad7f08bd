#include "primegaps/fitting.hpp"

#include <cmath>
#include <stdexcept>

#include "primegaps/specfun.hpp"

namespace primegaps {

LinearFit linear_lsq(const std::vector<std::pair<double, double>>& points) {
    const size_t n = points.size();
    if (n < 2) throw std::invalid_argument("linear_lsq: need at least 2 points");
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        sx += x;
        sy += y;
        sxx += (long double)x * x;
        sxy += (long double)x * y;
    }
    const long double det = (long double)n * sxx - sx * sx;
    if (!(std::abs((double)det) > 0) ||
        std::abs((double)det) < 1e-12 * (double)((long double)n * sxx))
        throw std::invalid_argument("linear_lsq: degenerate abscissae");
    LinearFit fit;
    fit.a = (double)(((long double)n * sxy - sx * sy) / det);
    fit.b = (double)((sy - (long double)fit.a * sx) / (long double)n);
    long double rss = 0;
    for (const auto& [x, y] : points) {
        const long double r = y - (fit.a * x + fit.b);
        rss += r * r;
    }
    fit.residual_ss = (double)rss;
    return fit;
}

std::pair<double, double> cosine_basis_fit(uint64_t d_max) {
    if (d_max < 6) throw std::invalid_argument("cosine_basis_fit: d_max must be >= 6");
    const auto P = singular_series_table((size_t)(d_max / 2) + 1);
    // basis {1, cos(2*pi*d/6)}; on even d the cosine is 1 (6|d) or -1/2
    long double n = 0, sc = 0, scc = 0, sy = 0, scy = 0;
    for (uint64_t k = 1; 2 * k <= d_max; ++k) {
        const double c = (2 * k) % 6 == 0 ? 1.0 : -0.5;
        const double y = P[k];
        n += 1;
        sc += c;
        scc += (long double)c * c;
        sy += y;
        scy += (long double)c * y;
    }
    const long double det = n * scc - sc * sc;
    const double beta = (double)((n * scy - sc * sy) / det);
    const double alpha = (double)((sy - (long double)beta * sc) / n);
    return {alpha, beta};
}

ExpFit exp_fit(const ScaledCurve& curve, double u_lo, double u_hi) {
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < curve.u.size(); ++i) {
        if (curve.u[i] < u_lo || curve.u[i] > u_hi) continue;
        if (!(curve.t[i] > 0))
            throw std::domain_error("exp_fit: non-positive ordinate inside fit range");
        pts.emplace_back(curve.u[i], std::log(curve.t[i]));
    }
    if (pts.size() < 3)
        throw std::invalid_argument("exp_fit: fewer than 3 points inside u range");
    const LinearFit lf = linear_lsq(pts);
    ExpFit out;
    out.prefactor = std::exp(lf.b);
    out.slope = -lf.a;
    out.u_lo = u_lo;
    out.u_hi = u_hi;
    out.n_points = pts.size();
    return out;
}

}  // namespace primegaps
