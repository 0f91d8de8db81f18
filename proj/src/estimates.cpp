#include "fkg/estimates.hpp"

#include "fkg/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace fkg {

RatioSeries estimate_ratio(const Trajectory& traj, const Field& u0, const Field& u1,
                           const RegularizedMass& mass, AprioriFlavor flavor,
                           const RocklandSymbol& a, double s) {
    const double nu = a.degree();
    const double q_hom = a.dilation().q();
    const double order = 0.5 * s * nu;

    double factor = 0.0;
    if (flavor == AprioriFlavor::SupMass) {
        factor = 1.0 + mass.norm_linf;
    } else {
        if (!(q_hom > nu * s)) {
            std::ostringstream msg;
            msg << "the critical-mass bound requires Q > nu*s, got Q=" << q_hom
                << " and nu*s=" << nu * s;
            throw ConfigError(msg.str());
        }
        if (!mass.norm_crit.valid || !mass.norm_2crit.valid)
            throw ConfigError("critical Lebesgue norms were not recorded for this mass");
        factor = (1.0 + mass.norm_2crit.value) * std::sqrt(1.0 + mass.norm_crit.value);
    }

    RatioSeries out;
    out.flavor = flavor;
    out.rhs = factor * (u1.l2_norm() + sobolev_h_norm(u0, order, a));

    for (const auto& snap : traj.snapshots) {
        const double lhs = sobolev_h_norm(snap.u, order, a) + snap.p.l2_norm();
        // Zero data propagates to the zero solution, so 0/0 reads as 0.
        const double r = out.rhs > 0.0 ? lhs / out.rhs
                                       : (lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        out.t.push_back(snap.t);
        out.ratio.push_back(r);
        out.max_ratio = std::max(out.max_ratio, r);
    }
    return out;
}

} // namespace fkg
