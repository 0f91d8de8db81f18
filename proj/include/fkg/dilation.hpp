#ifndef FKG_DILATION_HPP
#define FKG_DILATION_HPP

#include "fkg/rational.hpp"

#include <span>
#include <vector>

namespace fkg {

/// Anisotropic dilation structure of R^d: per-coordinate weights v_j > 0.
/// The dilation D_r scales coordinate j by r^{v_j}; its Jacobian is r^Q with
/// Q = sum v_j the homogeneous dimension.
class DilationStructure {
public:
    explicit DilationStructure(std::vector<Rational> weights);

    static DilationStructure isotropic(int dim);

    int dim() const { return static_cast<int>(weights_.size()); }
    const std::vector<Rational>& weights() const { return weights_; }
    Rational weight(int axis) const { return weights_.at(static_cast<std::size_t>(axis)); }

    /// Q = sum of the weights, exact.
    Rational homogeneous_dimension() const { return q_; }
    double q() const { return to_double(q_); }

    bool operator==(const DilationStructure& other) const { return weights_ == other.weights_; }

private:
    std::vector<Rational> weights_;
    Rational q_;
};

/// D_r(x) = (r^{v_1} x_1, ..., r^{v_d} x_d). Throws std::domain_error for r <= 0.
std::vector<double> dilate(std::span<const double> x, double r, const DilationStructure& d);

} // namespace fkg

#endif
