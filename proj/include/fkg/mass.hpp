#pragma once

#include "fkg/epsnet.hpp"
#include "fkg/field.hpp"
#include "fkg/fit.hpp"
#include "fkg/grid.hpp"

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace fkg {

/// Symbolic description of the (possibly singular) mass term before any
/// grid or epsilon enters.
struct MassSpec {
    enum class Kind { Zero, Bounded, DiracDelta, DeltaSquared, InversePower, Perturbed };
    enum class Regularity { LInf, C0 };

    Kind kind = Kind::Zero;
    std::string label = "zero";

    // Bounded: closed-form m(x) >= 0.
    std::function<double(std::span<const double>)> bounded_fn;
    Regularity regularity = Regularity::LInf;

    // DiracDelta: weight c >= 0.
    double weight = 1.0;

    // InversePower: |x|^-gamma, plateaued at cap_radius^-gamma inside the
    // Euclidean cap_radius ball.
    double gamma = 1.0;
    double cap_radius = 0.1;

    // Perturbed: base spec plus the constant exp(-1/eps).
    std::shared_ptr<const MassSpec> base;

    static MassSpec zero();
    static MassSpec bounded(std::function<double(std::span<const double>)> fn,
                            Regularity reg, std::string label = "bounded");
    static MassSpec dirac_delta(double weight);
    static MassSpec delta_squared();
    static MassSpec inverse_power(double gamma, double cap_radius);
    static MassSpec perturbed(MassSpec base_spec);
};

struct LebesgueNorm {
    double p = 0.0;
    double value = 0.0;
    /// False when the exponent p = Q/(nu s) or 2Q/(nu s) lands below 1.
    bool valid = false;
};

/// m_eps realized on a grid, with the Lebesgue norms the a-priori
/// estimates consume: p in {1, Q/(nu s), 2Q/(nu s), inf}.
struct RegularizedMass {
    double eps = 0.0;
    Field field;
    double norm_l1 = 0.0;
    double norm_linf = 0.0;
    LebesgueNorm norm_crit;    // p = Q/(nu s)
    LebesgueNorm norm_2crit;   // p = 2Q/(nu s)
};

/// Realizes the spec at eps: Zero -> 0, Bounded -> m * psi_eps,
/// DiracDelta(c) -> c psi_eps, DeltaSquared -> psi_eps^2,
/// InversePower -> capped m * psi_eps, Perturbed -> base + exp(-1/eps).
/// Nodal values in [-1e-12, 0) are clamped to 0; lower values raise
/// NumericalError. nu_s = nu * s fixes the recorded critical exponents.
RegularizedMass regularize(const MassSpec& spec, double eps, const GridPtr& grid, double nu_s);

struct MassNetPoint {
    double eps = 0.0;
    bool resolved = false;
    int refine_factor = 1;
    double norm = 0.0;
    double raw_mass = 0.0;
};

struct ModeratenessReport {
    double p = 0.0;
    std::vector<MassNetPoint> points;
    FitResult fit;
    bool moderate = false;
    double residual_ceiling = 0.0;
};

/// Realizes the spec across the net, refining the grid by powers of two
/// (up to refine_limit) whenever the mollifier under-resolves, and fits
/// log ||m_eps||_p against log(1/eps). Unresolved tail points are flagged
/// and excluded from the fit; fewer than 5 resolved points is a
/// ResolutionError.
ModeratenessReport moderateness_witness(const MassSpec& spec, double p, const EpsilonNet& net,
                                        const GridPtr& grid, double nu_s,
                                        int refine_limit = 8, double residual_ceiling = 0.1);

} // namespace fkg
