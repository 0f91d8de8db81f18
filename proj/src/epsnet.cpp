#include "fkg/epsnet.hpp"

#include "fkg/errors.hpp"

namespace fkg {

EpsilonNet::EpsilonNet(double eps0, double rho, int n) {
    if (!(eps0 > 0.0) || eps0 > 1.0) throw ConfigError("epsilon net requires eps0 in (0,1]");
    if (!(rho > 0.0) || !(rho < 1.0)) throw ConfigError("epsilon net requires rho in (0,1)");
    if (n < 5) throw ConfigError("epsilon net needs at least 5 points");
    values_.resize(static_cast<std::size_t>(n));
    double e = eps0;
    for (int i = 0; i < n; ++i, e *= rho) values_[static_cast<std::size_t>(i)] = e;
    resolved_.assign(values_.size(), true);
}

} // namespace fkg
