#include "fkg/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace fkg {

FitResult fit_exponent(std::span<const double> eps, std::span<const double> y) {
    if (eps.size() != y.size()) throw std::invalid_argument("fit_exponent size mismatch");
    const std::size_t n = eps.size();
    if (n < 5) throw std::invalid_argument("fit_exponent needs at least 5 points");

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(y[i] > 0.0)) throw std::domain_error("fit_exponent requires positive values");
        if (!(eps[i] > 0.0)) throw std::domain_error("fit_exponent requires positive eps");
        const double x = -std::log(eps[i]);
        const double ly = std::log(y[i]);
        sx += x;
        sy += ly;
        sxx += x * x;
        sxy += x * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (!(denom > 1e-12 * (n * sxx + 1e-300)))
        throw std::domain_error("fit_exponent: degenerate abscissae");
    FitResult r;
    r.slope = (n * sxy - sx * sy) / denom;
    r.intercept = (sy - r.slope * sx) / n;

    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -std::log(eps[i]);
        const double d = std::log(y[i]) - (r.intercept + r.slope * x);
        ss += d * d;
    }
    r.residual = std::sqrt(ss / n);
    return r;
}

} // namespace fkg
