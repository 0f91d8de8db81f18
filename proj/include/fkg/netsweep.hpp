#pragma once

#include "fkg/dynamics.hpp"
#include "fkg/epsnet.hpp"
#include "fkg/estimates.hpp"
#include "fkg/field.hpp"
#include "fkg/fit.hpp"
#include "fkg/mass.hpp"
#include "fkg/symbol.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fkg {

/// Fixed problem structure shared by every run of a sweep.
struct LabSetup {
    GridPtr base_grid;
    RocklandSymbol symbol;
    double s = 1.0;

    double nu_s() const { return symbol.degree() * s; }
    double q() const { return base_grid->dilation().q(); }
};

struct DataSpec {
    FieldFactory u0;
    FieldFactory u1;
    std::string label = "data";
};

struct SolverConfig {
    double T = 1.0;
    /// dt <= 0 picks the integrator default; the same dt is used for
    /// every epsilon so series are comparable.
    double dt = 0.0;
    int snapshot_stride = 10;
    /// Largest grid-doubling factor tried when the mollifier
    /// under-resolves; the remaining tail is reported as unresolved.
    int refine_limit = 8;
    int threads = 1;
    int k_max = 10;
    /// Relative tolerance for the two-code-path uniqueness check.
    double crossval_tol = 1e-6;
    /// dt of the cross-validation runs; <= 0 tightens the default by 10x.
    double crossval_dt = 0.0;
    double residual_ceiling = 0.1;
};

struct EpsRecord {
    double eps = 0.0;
    bool resolved = false;
    bool failed = false;
    std::string failure;
    int refine_factor = 1;
    std::vector<int> grid_counts;
    /// Step actually used by this record's solves.
    double dt = 0.0;
    /// sup_t [ ||u(t)||_{H^{s nu/2}} + ||p(t)||_{L^2} ] over snapshots.
    double seminorm = 0.0;
    double mass_l1 = 0.0;
    double mass_linf = 0.0;
    LebesgueNorm mass_crit;
    LebesgueNorm mass_2crit;
    double energy_drift = 0.0;
    double runtime_s = 0.0;
    /// Max-over-t a-priori ratio meters; crit is NaN when Q <= nu s.
    double ratio_sup = 0.0;
    double ratio_crit = 0.0;
    /// Experiment-specific series value: D(eps) for uniqueness,
    /// C(eps) for consistency, NaN otherwise.
    double extra = 0.0;
};

struct NegligibilityReport {
    bool negligible = false;
    double floor = 0.0;
    int k_max = 0;
    struct KMargin {
        int k = 0;
        bool pass = false;
        double peak_ratio = 0.0;
        double last_ratio = 0.0;
        int above_floor = 0;
    };
    std::vector<KMargin> margins;
};

struct SweepVerdict {
    std::string name;
    bool pass = false;
    /// The numeric criterion that produced the verdict, spelled out.
    std::string criterion;
};

struct SweepReport {
    std::string experiment;
    std::string descriptor;
    std::vector<EpsRecord> records;
    std::map<std::string, FitResult> fits;
    std::vector<SweepVerdict> verdicts;
    std::optional<NegligibilityReport> negligibility;
    /// Uniqueness cross-validation: relative disagreement of the direct
    /// difference and the difference-equation solve at crossval_eps.
    double crossval_rel = 0.0;
    double crossval_eps = 0.0;
    /// Consistency: discretization floor of the reference configuration.
    double floor = 0.0;
    bool aborted = false;
    std::string abort_reason;

    bool all_passed() const;
};

/// Certifies value_i <~ eps_i^k for k = 1..k_max on a geometric net.
/// Points with value <= floor count as zero at working precision; for the
/// others the ratio value/eps^k must be nonincreasing (within slack) over
/// the trailing `window` above-floor points. "Not negligible" is a
/// verdict, not an error.
NegligibilityReport negligibility_check(std::span<const double> eps,
                                        std::span<const double> value, int k_max,
                                        double floor, double slack = 1.1, int window = 3);

/// Solves the regularized problem across the net and fits the seminorm
/// S(eps); the moderate verdict needs the log-log fit residual at or
/// below the configured ceiling.
SweepReport existence_sweep(const MassSpec& spec, const DataSpec& data, const EpsilonNet& net,
                            const LabSetup& setup, const SolverConfig& cfg);

/// How the companion net m~ differs from m.
enum class PerturbationKind {
    None,     ///< identical nets; D must sit at exact zero
    ExpShift, ///< m~ = m + exp(-1/eps)
};

/// Solves both the base net and its perturbed companion, checks
/// D(eps) = sup_t ||u - u~||_{L^2} for negligibility, and cross-validates
/// D at one mid-net eps against the zero-data inhomogeneous solve driven
/// by f = (m~ - m) u~.
SweepReport uniqueness_experiment(const MassSpec& spec, PerturbationKind pert,
                                  const DataSpec& data, const EpsilonNet& net,
                                  const LabSetup& setup, const SolverConfig& cfg);

/// Measures C(eps) = sup_t ||u_eps - u_ref||_{L^2} against a reference
/// solve with the unregularized mass at ref_space x spatial and
/// ref_time x temporal resolution; consistent when C decreases across the
/// net (one floor-level plateau allowed) and ends within floor_mult of
/// the measured discretization floor.
SweepReport consistency_experiment(const MassSpec& spec, const DataSpec& data,
                                   const EpsilonNet& net, const LabSetup& setup,
                                   const SolverConfig& cfg, int ref_space = 2, int ref_time = 4,
                                   double floor_mult = 10.0);

} // namespace fkg
