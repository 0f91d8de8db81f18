#pragma once

#include "fkg/field.hpp"
#include "fkg/grid.hpp"

#include <span>

namespace fkg {

/// The standard bump psi(x) = c_d exp(-1/(1-|x|^2)) on the open Euclidean
/// unit ball, zero outside, with c_d fixed so the continuum integral over
/// R^d is 1. c_d is computed once per dimension by high-resolution radial
/// quadrature and cached.
class MollifierProfile {
public:
    explicit MollifierProfile(int dim);

    int dim() const { return dim_; }
    double normalization() const { return c_; }
    double operator()(std::span<const double> x) const;

private:
    int dim_;
    double c_;
};

struct MollifierDiagnostics {
    /// cellVol * sum of the raw samples before renormalization; the
    /// deviation from 1 measures the quadrature defect at this resolution.
    double raw_mass = 0.0;
    /// Smallest number of interior support nodes over the axes.
    int min_axis_nodes = 0;
};

/// True when the scaled support (-eps^{v_j}, eps^{v_j}) contains at least
/// four grid nodes on every axis.
bool mollifier_resolved(double eps, const BoxGrid& grid);

/// Samples psi_eps(x) = eps^{-Q} psi(D_{1/eps} x) on the grid and rescales
/// the samples so the discrete L^1 mass cellVol * sum psi_eps is exactly 1.
/// The raw quadrature defect is reported through diag.
Field mollifier_scale(double eps, const GridPtr& grid, MollifierDiagnostics* diag = nullptr);

} // namespace fkg
