#pragma once

#include "fkg/dynamics.hpp"
#include "fkg/mass.hpp"

#include <vector>

namespace fkg {

/// Which a-priori bound the ratio meter is held against. SupMass uses the
/// factor (1 + ||m||_inf); CriticalMass uses
/// (1 + ||m||_{2Q/(nu s)}) (1 + ||m||_{Q/(nu s)})^{1/2} and is only
/// meaningful when Q > nu s.
enum class AprioriFlavor { SupMass, CriticalMass };

struct RatioSeries {
    AprioriFlavor flavor = AprioriFlavor::SupMass;
    double rhs = 0.0;
    std::vector<double> t;
    std::vector<double> ratio;
    double max_ratio = 0.0;
};

/// Pointwise-in-t ratio of the solution size
/// ||u(t)||_{H^{s nu/2}} + ||p(t)||_{L^2} against the flavor's data bound
/// rhs = factor * (||u1||_{L^2} + ||u0||_{H^{s nu/2}}), evaluated on the
/// trajectory snapshots. Boundedness across runs is the measured content;
/// the constant itself is reported, never asserted.
RatioSeries estimate_ratio(const Trajectory& traj, const Field& u0, const Field& u1,
                           const RegularizedMass& mass, AprioriFlavor flavor,
                           const RocklandSymbol& a, double s);

} // namespace fkg
