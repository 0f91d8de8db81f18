#include "fkg/config.hpp"
#include "fkg/diagnostics.hpp"
#include "fkg/dynamics.hpp"
#include "fkg/errors.hpp"
#include "fkg/mollifier.hpp"
#include "fkg/netsweep.hpp"
#include "fkg/report.hpp"
#include "fkg/selftest.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;
using namespace fkg;

const char* kDefaultConfig = R"(# fkglab built-in defaults
[structure]
weights = [1]

[grid]
extents = [12.0]
counts = [64]

[operator]
exponents = [1]
s = 0.4

[mass]
kind = "dirac_delta"
weight = 1.0

[data]
u0 = "gaussian"
u0_width = 1.0
u0_amplitude = 1.0
u1 = "zero"

[time]
T = 1.0
dt = "auto"
snapshot_stride = 10

[net]
eps0 = 0.5
rho = 0.7071067811865476
count = 12
k_max = 10
refine_limit = 8
residual_ceiling = 0.1

[uniqueness]
perturbation = "exp_shift"
crossval_tol = 1e-6
crossval_dt = "auto"

[consistency]
ref_space = 2
ref_time = 4
floor_mult = 10.0

[solve]
eps = 0.25

[output]
dir = "out"
prefix = "run"
)";

std::string out_path(const ExperimentConfig& cfg, const std::string& suffix) {
    return (fs::path(cfg.out_dir) / (cfg.prefix + suffix)).string();
}

void write_echo(const ExperimentConfig& cfg) {
    write_text_file(out_path(cfg, "_config.toml"), cfg.echo);
}

// Grid-doubling loop shared by the single-run commands.
GridPtr resolved_grid(double eps, const ExperimentConfig& cfg) {
    GridPtr g = cfg.grid;
    int factor = 1;
    while (!mollifier_resolved(eps, *g) && factor < cfg.solver.refine_limit) {
        factor *= 2;
        g = refined_grid(*cfg.grid, factor);
    }
    return g;
}

int run_solve(const ExperimentConfig& cfg) {
    const double eps = cfg.solve_eps;
    const LabSetup lab = cfg.lab();
    GridPtr g = resolved_grid(eps, cfg);
    RegularizedMass mass = regularize(cfg.mass, eps, g, lab.nu_s());
    KleinGordonIntegrator integ(g, cfg.symbol, cfg.s, mass.field);
    Field u0 = cfg.data.u0(g);
    Field u1 = cfg.data.u1(g);
    Trajectory traj =
        integ.solve(u0, u1, cfg.solver.T, cfg.solver.dt, cfg.solver.snapshot_stride);

    std::vector<RatioSeries> ratios;
    ratios.push_back(
        estimate_ratio(traj, u0, u1, mass, AprioriFlavor::SupMass, cfg.symbol, cfg.s));
    if (lab.q() > lab.nu_s())
        ratios.push_back(
            estimate_ratio(traj, u0, u1, mass, AprioriFlavor::CriticalMass, cfg.symbol, cfg.s));

    write_echo(cfg);
    write_text_file(out_path(cfg, "_energy.csv"), energy_csv(traj));
    for (const auto& rs : ratios) {
        const char* name =
            rs.flavor == AprioriFlavor::SupMass ? "_ratio_sup.csv" : "_ratio_crit.csv";
        write_text_file(out_path(cfg, name), ratio_series_csv(rs, cfg.hash));
    }
    write_text_file(out_path(cfg, "_final_field.csv"), field_csv(traj.back().u));
    write_text_file(out_path(cfg, "_report.json"),
                    solve_report_json(traj, mass, ratios, cfg.echo, cfg.hash));

    std::cout << "solve: eps " << format_double(eps) << ", steps " << traj.steps << ", drift "
              << format_double(traj.energy_drift()) << "\n"
              << "final |u|_L2 " << format_double(traj.back().u.l2_norm()) << ", |p|_L2 "
              << format_double(traj.back().p.l2_norm()) << "\n"
              << "config " << cfg.hash << ", outputs in " << cfg.out_dir << "\n";
    return 0;
}

int finish_sweep(const ExperimentConfig& cfg, const SweepReport& rep) {
    write_echo(cfg);
    write_text_file(out_path(cfg, "_report.json"), sweep_report_json(rep, cfg.echo, cfg.hash));
    write_text_file(out_path(cfg, "_series.csv"), sweep_series_csv(rep));
    std::cout << sweep_summary_text(rep);
    std::cout << "config " << cfg.hash << ", outputs in " << cfg.out_dir << "\n";
    if (rep.aborted) {
        std::cerr << "sweep aborted: " << rep.abort_reason << " (partial artifacts kept)\n";
        return 3;
    }
    return 0;
}

int run_mollifier(const ExperimentConfig& cfg) {
    const LabSetup lab = cfg.lab();
    std::vector<ModeratenessReport> tables;
    for (double p : cfg.mollifier_ps)
        tables.push_back(moderateness_witness(MassSpec::dirac_delta(1.0), p, cfg.net, cfg.grid,
                                              lab.nu_s(), cfg.solver.refine_limit,
                                              cfg.solver.residual_ceiling));
    write_echo(cfg);
    write_text_file(out_path(cfg, "_norms.csv"), mass_table_csv(tables));
    write_text_file(out_path(cfg, "_report.json"),
                    mollifier_report_json(tables, cfg.echo, cfg.hash));
    std::cout << mollifier_summary_text(tables);
    std::cout << "config " << cfg.hash << ", outputs in " << cfg.out_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fkglab: very-weak-solution laboratory for fractional wave equations with "
                 "singular mass"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    int threads = 0;
    app.add_option("-c,--config", config_path, "configuration file (built-in defaults if absent)");
    app.add_option("--set", overrides, "override, section.key=value (repeatable)");
    app.add_option("--threads", threads, "worker threads for per-epsilon runs");

    auto* cmd_solve = app.add_subcommand("solve", "single-epsilon run with energy ledger");
    auto* cmd_sweep = app.add_subcommand("sweep", "existence sweep across the epsilon net");
    auto* cmd_uniq = app.add_subcommand("uniqueness", "perturbation difference study");
    auto* cmd_cons = app.add_subcommand("consistency", "convergence to the classical solution");
    auto* cmd_moll = app.add_subcommand("mollifier", "mollifier norm scaling tables");
    auto* cmd_self = app.add_subcommand("selftest", "invariant battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        ConfigTable table = config_path.empty()
                                ? ConfigTable::parse_text(kDefaultConfig, "<default>")
                                : ConfigTable::parse_file(config_path);
        for (const auto& o : overrides) table.set(o);
        ExperimentConfig cfg = build_config(table);
        if (threads > 0) cfg.solver.threads = threads;

        if (cmd_self->parsed()) {
            bool ok = run_selftest(std::cout);
            return ok ? 0 : 3;
        }
        if (cmd_solve->parsed()) return run_solve(cfg);
        if (cmd_moll->parsed()) return run_mollifier(cfg);
        if (cmd_sweep->parsed())
            return finish_sweep(cfg,
                                existence_sweep(cfg.mass, cfg.data, cfg.net, cfg.lab(),
                                                cfg.solver));
        if (cmd_uniq->parsed())
            return finish_sweep(cfg, uniqueness_experiment(cfg.mass, cfg.perturbation,
                                                           cfg.data, cfg.net, cfg.lab(),
                                                           cfg.solver));
        if (cmd_cons->parsed())
            return finish_sweep(cfg, consistency_experiment(cfg.mass, cfg.data, cfg.net,
                                                            cfg.lab(), cfg.solver,
                                                            cfg.ref_space, cfg.ref_time,
                                                            cfg.floor_mult));
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
