#pragma once

#include "fkg/field.hpp"
#include "fkg/symbol.hpp"

namespace fkg {

/// E(t) = ||p||^2_{L2} + ||R^{s/2}u||^2_{L2} + ||sqrt(m) u||^2_{L2}.
struct EnergyRecord {
    double t = 0.0;
    double kinetic = 0.0;
    double elastic = 0.0;
    double potential = 0.0;
    double total = 0.0;
};

EnergyRecord energy(double t, const Field& u, const Field& p, const Field& mass,
                    const RocklandSymbol& a, double s);

/// ||R^{sigma/nu} f||_{L^2} with nu the symbol's homogeneous degree; the
/// multiplier annihilates the zero mode for sigma > 0, and sigma = 0 is
/// plain L^2 by convention.
double sobolev_dot_norm(const Field& f, double sigma, const RocklandSymbol& a);

/// Dot norm plus plain L^2, which restores control of the field mean.
double sobolev_h_norm(const Field& f, double sigma, const RocklandSymbol& a);

/// ||R^{sigma/nu} f||_{L^q}, the mixed-integrability Sobolev seminorm.
double sobolev_lq_norm(const Field& f, double sigma, double q, const RocklandSymbol& a);

/// ||f||_{L^{q0}_{a_ord}} / ||f||_{L^{qt0}_b}, defined only when the
/// exponents satisfy b - a_ord = Q (1/qt0 - 1/q0) with 1 < qt0 < q0.
/// An empirical meter for the embedding constant, not an identity.
double embedding_ratio(const Field& f, double b, double qt0, double a_ord, double q0,
                       const RocklandSymbol& a);

} // namespace fkg
