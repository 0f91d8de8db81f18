#pragma once

#include <span>

namespace fkg {

struct FitResult {
    /// Fitted exponent N in y ~ eps^{-N}.
    double slope = 0.0;
    double intercept = 0.0;
    /// Root-mean-square residual of log y around the fitted line.
    double residual = 0.0;
};

/// Least squares of log y_i against log(1/eps_i). Needs at least 5 points
/// and strictly positive y.
FitResult fit_exponent(std::span<const double> eps, std::span<const double> y);

} // namespace fkg
