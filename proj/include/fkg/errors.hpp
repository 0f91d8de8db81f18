#ifndef FKG_ERRORS_HPP
#define FKG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fkg {

/// Invalid or inconsistent experiment configuration. CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A field cannot be represented on the requested grid (mollifier support
/// under-resolved or exceeding the box). Sweeps catch this and either refine
/// the grid or mark the epsilon unresolved.
struct ResolutionError : std::runtime_error {
    explicit ResolutionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Runtime numerical failure (NaN/Inf, blowup, oracle non-convergence).
/// CLI maps this to exit code 3.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace fkg

#endif
