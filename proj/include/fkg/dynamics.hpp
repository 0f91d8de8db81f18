#pragma once

#include "fkg/diagnostics.hpp"
#include "fkg/field.hpp"
#include "fkg/symbol.hpp"

#include <functional>
#include <vector>

namespace fkg {

struct SolverState {
    double t = 0.0;
    Field u;
    Field p;

    SolverState(Field u_, Field p_, double t_ = 0.0);
};

struct Snapshot {
    double t = 0.0;
    Field u;
    Field p;
    EnergyRecord energy;
};

/// Snapshot ledger of a run: t_0 = 0, strictly increasing, last t = T.
struct Trajectory {
    double dt = 0.0;
    int steps = 0;
    std::vector<Snapshot> snapshots;

    const Snapshot& back() const { return snapshots.back(); }
    /// max over snapshots of |E(t) - E(0)| / E(0).
    double energy_drift() const;
};

/// Propagator for u_tt + R^s u + m(x) u = 0 on a fixed grid, with
/// m realized as a nonnegative nodal field. The free part is advanced
/// exactly per Fourier mode; the mass term enters through splitting.
class KleinGordonIntegrator {
public:
    KleinGordonIntegrator(GridPtr grid, RocklandSymbol symbol, double s, Field mass);

    const GridPtr& grid() const { return grid_; }
    const RocklandSymbol& symbol() const { return symbol_; }
    double s() const { return s_; }
    const Field& mass() const { return mass_; }

    /// Exact flow of u_tt + R^s u = 0: per mode with w = a(xi)^{s/2},
    /// u^ <- cos(w dt) u^ + sin(w dt)/w p^, p^ <- -w sin(w dt) u^ + cos(w dt) p^.
    /// dt may be negative.
    SolverState free_flow(const SolverState& state, double dt) const;

    /// Exact flow of u_tt + m(x) u = 0 frozen in x, the pointwise rotation
    /// with mu = sqrt(m(x)); reduces to the drift u <- u + dt p where m = 0.
    SolverState mass_flow(const SolverState& state, double dt) const;

    /// Second-order symmetric step: free_flow(dt/2), impulse
    /// p <- p - dt m u, free_flow(dt/2). Exact when m = 0; the impulse is
    /// the splitting partner that leaves the drift u' = p entirely to the
    /// free part, so the composed generator matches the equation.
    SolverState strang_step(const SolverState& state, double dt) const;

    /// dt resolving the fastest phase rotation ten times over, capped at
    /// T/100 and rounded so dt divides T exactly.
    double default_dt(double T) const;

    /// Strang-steps from (u0, u1) to time T. dt <= 0 picks default_dt(T);
    /// a positive dt must divide T within rounding. Snapshots (with energy)
    /// every snapshot_stride steps plus initial and final. NaN detection
    /// aborts with a diagnostic.
    Trajectory solve(const Field& u0, const Field& u1, double T, double dt = 0.0,
                     int snapshot_stride = 10) const;

    /// Independent oracle: fixed-point iteration of the mode-wise
    /// variation-of-constants formula with f = -m u and trapezoidal time
    /// quadrature at spacing dtau, restarted on subintervals short enough
    /// to contract. Returns u at T once successive iterates differ by at
    /// most tol in sup-t L^2.
    Field picard_duhamel_solve(const Field& u0, const Field& u1, double T, double dtau,
                               double tol = 1e-10, int max_iter = 200) const;

    /// Zero-data solve of u_tt + R^s u + m u = f(t, x); the source enters
    /// as an impulse dt * f(t + dt/2) at the step midpoint, which keeps the
    /// stepping second-order accurate.
    Trajectory inhomogeneous_solve(const std::function<Field(double)>& source, double T,
                                   double dt = 0.0, int snapshot_stride = 10) const;

private:
    GridPtr grid_;
    RocklandSymbol symbol_;
    double s_;
    Field mass_;
    std::vector<double> omega_;
    std::vector<double> mu_;
    double mass_sup_;
    double omega_max_;

    void rotate(Field& uhat, Field& phat, double dt) const;
    EnergyRecord energy_spectral(double t, const Field& u_phys, const Field& uhat,
                                 const Field& phat) const;
    Trajectory run(const Field& u0, const Field& u1, double T, double dt, int stride,
                   const std::function<Field(double)>* source) const;
};

} // namespace fkg
