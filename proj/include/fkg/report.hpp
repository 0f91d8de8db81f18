#pragma once

#include "fkg/dynamics.hpp"
#include "fkg/estimates.hpp"
#include "fkg/mass.hpp"
#include "fkg/netsweep.hpp"

#include <string>
#include <vector>

namespace fkg {

/// Fixed 12-digit scientific form; the one float format every report
/// uses, so identical runs produce identical bytes. Non-finite values
/// print as nan / inf / -inf.
std::string format_double(double v);

/// Writes content, creating parent directories as needed.
void write_text_file(const std::string& path, const std::string& content);

/// Energy ledger of one run: t,kinetic,elastic,potential,total.
std::string energy_csv(const Trajectory& traj);

/// One (t, value) series with a header naming the bound flavor and the
/// configuration hash.
std::string ratio_series_csv(const RatioSeries& rs, const std::string& config_hash);

/// Mollifier/mass norm tables: epsilon,p,norm,resolved_flag.
std::string mass_table_csv(const std::vector<ModeratenessReport>& tables);

/// Per-epsilon sweep series, one row per net point.
std::string sweep_series_csv(const SweepReport& rep);

/// Nodal values in row-major order (last axis fastest) after a header
/// describing the box.
std::string field_csv(const Field& f);

/// Machine-readable sweep document: full series, fits, verdicts,
/// negligibility margins, config echo and hash.
std::string sweep_report_json(const SweepReport& rep, const std::string& config_echo,
                              const std::string& config_hash);

/// Single-run document: discretization, energy ledger, norms, drift.
std::string solve_report_json(const Trajectory& traj, const RegularizedMass& mass,
                              const std::vector<RatioSeries>& ratios,
                              const std::string& config_echo, const std::string& config_hash);

/// Norm-table document for the mollifier scaling study.
std::string mollifier_report_json(const std::vector<ModeratenessReport>& tables,
                                  const std::string& config_echo,
                                  const std::string& config_hash);

/// Human-readable digest: verdict lines plus the series behind them.
std::string sweep_summary_text(const SweepReport& rep);
std::string mollifier_summary_text(const std::vector<ModeratenessReport>& tables);

} // namespace fkg
