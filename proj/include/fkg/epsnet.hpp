#pragma once

#include <vector>

namespace fkg {

/// Geometric net eps_i = eps0 * rho^i, i = 0..n-1, strictly decreasing
/// inside (0,1]. Resolvability flags start true and are filled in by the
/// sweep harness.
class EpsilonNet {
public:
    EpsilonNet(double eps0, double rho, int n);

    int size() const { return static_cast<int>(values_.size()); }
    double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& values() const { return values_; }

    std::vector<bool>& resolved() { return resolved_; }
    const std::vector<bool>& resolved() const { return resolved_; }

private:
    std::vector<double> values_;
    std::vector<bool> resolved_;
};

} // namespace fkg
