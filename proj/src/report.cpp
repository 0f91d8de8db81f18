#include "fkg/report.hpp"

#include "fkg/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fkg {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) throw ConfigError("cannot create directory: " + p.parent_path().string());
    }
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << content;
    if (!out) throw ConfigError("write failed: " + path);
}

namespace {

ordered_json jnum(double v) { return format_double(v); }

ordered_json fit_json(const FitResult& fit) {
    ordered_json j;
    j["slope"] = jnum(fit.slope);
    j["intercept"] = jnum(fit.intercept);
    j["residual"] = jnum(fit.residual);
    return j;
}

ordered_json record_json(const EpsRecord& r) {
    ordered_json j;
    j["eps"] = jnum(r.eps);
    j["resolved"] = r.resolved;
    j["failed"] = r.failed;
    if (r.failed) j["failure"] = r.failure;
    j["refine_factor"] = r.refine_factor;
    j["grid_counts"] = r.grid_counts;
    j["dt"] = jnum(r.dt);
    j["seminorm"] = jnum(r.seminorm);
    j["mass_l1"] = jnum(r.mass_l1);
    j["mass_linf"] = jnum(r.mass_linf);
    j["mass_crit_p"] = jnum(r.mass_crit.p);
    j["mass_crit"] = r.mass_crit.valid ? jnum(r.mass_crit.value) : jnum(NAN);
    j["mass_2crit_p"] = jnum(r.mass_2crit.p);
    j["mass_2crit"] = r.mass_2crit.valid ? jnum(r.mass_2crit.value) : jnum(NAN);
    j["energy_drift"] = jnum(r.energy_drift);
    j["ratio_sup"] = jnum(r.ratio_sup);
    j["ratio_crit"] = jnum(r.ratio_crit);
    j["extra"] = jnum(r.extra);
    j["runtime_s"] = jnum(r.runtime_s);
    return j;
}

ordered_json base_sweep_json(const SweepReport& rep) {
    ordered_json j;
    j["experiment"] = rep.experiment;
    j["descriptor"] = rep.descriptor;
    j["aborted"] = rep.aborted;
    if (rep.aborted) j["abort_reason"] = rep.abort_reason;
    ordered_json recs = ordered_json::array();
    for (const auto& r : rep.records) recs.push_back(record_json(r));
    j["records"] = recs;
    ordered_json fits;
    for (const auto& [name, fit] : rep.fits) fits[name] = fit_json(fit);
    j["fits"] = fits;
    ordered_json verdicts = ordered_json::array();
    for (const auto& v : rep.verdicts) {
        ordered_json jv;
        jv["name"] = v.name;
        jv["pass"] = v.pass;
        jv["criterion"] = v.criterion;
        verdicts.push_back(jv);
    }
    j["verdicts"] = verdicts;
    if (rep.negligibility) {
        const auto& n = *rep.negligibility;
        ordered_json jn;
        jn["negligible"] = n.negligible;
        jn["floor"] = jnum(n.floor);
        jn["k_max"] = n.k_max;
        ordered_json margins = ordered_json::array();
        for (const auto& m : n.margins) {
            ordered_json jm;
            jm["k"] = m.k;
            jm["pass"] = m.pass;
            jm["peak_ratio"] = jnum(m.peak_ratio);
            jm["last_ratio"] = jnum(m.last_ratio);
            jm["above_floor"] = m.above_floor;
            margins.push_back(jm);
        }
        jn["margins"] = margins;
        j["negligibility"] = jn;
    }
    if (rep.experiment == "uniqueness") {
        j["crossval_rel"] = jnum(rep.crossval_rel);
        j["crossval_eps"] = jnum(rep.crossval_eps);
    }
    if (rep.experiment == "consistency") j["floor"] = jnum(rep.floor);
    j["all_passed"] = rep.all_passed();
    return j;
}

void attach_config(ordered_json& j, const std::string& echo, const std::string& hash) {
    j["config_hash"] = hash;
    j["config_echo"] = echo;
}

std::string csv_int_list(const std::vector<int>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "x" : "") << v[i];
    return os.str();
}

} // namespace

std::string energy_csv(const Trajectory& traj) {
    std::ostringstream os;
    os << "t,kinetic,elastic,potential,total\n";
    for (const auto& snap : traj.snapshots) {
        const auto& e = snap.energy;
        os << format_double(e.t) << ',' << format_double(e.kinetic) << ','
           << format_double(e.elastic) << ',' << format_double(e.potential) << ','
           << format_double(e.total) << '\n';
    }
    return os.str();
}

std::string ratio_series_csv(const RatioSeries& rs, const std::string& config_hash) {
    std::ostringstream os;
    os << "# flavor = "
       << (rs.flavor == AprioriFlavor::SupMass ? "sup_mass" : "critical_mass") << '\n';
    os << "# config = " << config_hash << '\n';
    os << "# rhs = " << format_double(rs.rhs) << '\n';
    os << "t,value\n";
    for (std::size_t i = 0; i < rs.t.size(); ++i)
        os << format_double(rs.t[i]) << ',' << format_double(rs.ratio[i]) << '\n';
    return os.str();
}

std::string mass_table_csv(const std::vector<ModeratenessReport>& tables) {
    std::ostringstream os;
    os << "epsilon,p,norm,resolved_flag\n";
    for (const auto& table : tables)
        for (const auto& pt : table.points)
            os << format_double(pt.eps) << ',' << format_double(table.p) << ','
               << format_double(pt.norm) << ',' << (pt.resolved ? 1 : 0) << '\n';
    return os.str();
}

std::string sweep_series_csv(const SweepReport& rep) {
    std::ostringstream os;
    const char* extra = rep.experiment == "uniqueness"
                            ? "difference_sup_l2"
                            : (rep.experiment == "consistency" ? "reference_gap_sup_l2"
                                                               : "unused");
    os << "eps,resolved,failed,refine_factor,grid,dt,seminorm,mass_l1,mass_linf,mass_crit,"
          "mass_2crit,energy_drift,ratio_sup,ratio_crit,"
       << extra << ",runtime_s\n";
    for (const auto& r : rep.records) {
        os << format_double(r.eps) << ',' << (r.resolved ? 1 : 0) << ',' << (r.failed ? 1 : 0)
           << ',' << r.refine_factor << ',' << csv_int_list(r.grid_counts) << ','
           << format_double(r.dt) << ',' << format_double(r.seminorm) << ','
           << format_double(r.mass_l1) << ',' << format_double(r.mass_linf) << ','
           << format_double(r.mass_crit.valid ? r.mass_crit.value : NAN) << ','
           << format_double(r.mass_2crit.valid ? r.mass_2crit.value : NAN) << ','
           << format_double(r.energy_drift) << ',' << format_double(r.ratio_sup) << ','
           << format_double(r.ratio_crit) << ',' << format_double(r.extra) << ','
           << format_double(r.runtime_s) << '\n';
    }
    return os.str();
}

std::string field_csv(const Field& f) {
    const BoxGrid& g = *f.grid();
    std::ostringstream os;
    os << "# dim = " << g.dim() << '\n';
    os << "# counts =";
    for (int c : g.counts()) os << ' ' << c;
    os << '\n';
    os << "# extents =";
    for (double L : g.extents()) os << ' ' << format_double(L);
    os << '\n';
    os << "# weights =";
    for (const auto& w : g.dilation().weights()) os << ' ' << to_string(w);
    os << '\n';
    for (int ax = 0; ax < g.dim(); ++ax) os << 'i' << ax << ',';
    for (int ax = 0; ax < g.dim(); ++ax) os << 'x' << ax << ',';
    os << "re,im\n";
    std::vector<double> x(static_cast<std::size_t>(g.dim()));
    for_each_index(g, [&](std::size_t flat, std::span<const int> idx) {
        for (int ax = 0; ax < g.dim(); ++ax) {
            os << idx[ax] << ',';
            x[static_cast<std::size_t>(ax)] = g.coord(ax, idx[ax]);
        }
        for (int ax = 0; ax < g.dim(); ++ax) os << format_double(x[ax]) << ',';
        const cplx v = f[flat];
        os << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    });
    return os.str();
}

std::string sweep_report_json(const SweepReport& rep, const std::string& config_echo,
                              const std::string& config_hash) {
    ordered_json j = base_sweep_json(rep);
    attach_config(j, config_echo, config_hash);
    return j.dump(2) + "\n";
}

std::string solve_report_json(const Trajectory& traj, const RegularizedMass& mass,
                              const std::vector<RatioSeries>& ratios,
                              const std::string& config_echo, const std::string& config_hash) {
    ordered_json j;
    j["experiment"] = "solve";
    j["eps"] = jnum(mass.eps);
    j["dt"] = jnum(traj.dt);
    j["steps"] = traj.steps;
    j["snapshots"] = static_cast<int>(traj.snapshots.size());
    j["energy_drift"] = jnum(traj.energy_drift());
    j["mass_l1"] = jnum(mass.norm_l1);
    j["mass_linf"] = jnum(mass.norm_linf);
    j["mass_crit_p"] = jnum(mass.norm_crit.p);
    j["mass_crit"] = mass.norm_crit.valid ? jnum(mass.norm_crit.value) : jnum(NAN);
    j["mass_2crit_p"] = jnum(mass.norm_2crit.p);
    j["mass_2crit"] = mass.norm_2crit.valid ? jnum(mass.norm_2crit.value) : jnum(NAN);
    j["final_u_l2"] = jnum(traj.back().u.l2_norm());
    j["final_p_l2"] = jnum(traj.back().p.l2_norm());
    ordered_json jr = ordered_json::array();
    for (const auto& rs : ratios) {
        ordered_json r;
        r["flavor"] = rs.flavor == AprioriFlavor::SupMass ? "sup_mass" : "critical_mass";
        r["rhs"] = jnum(rs.rhs);
        r["max_ratio"] = jnum(rs.max_ratio);
        jr.push_back(r);
    }
    j["ratios"] = jr;
    attach_config(j, config_echo, config_hash);
    return j.dump(2) + "\n";
}

std::string mollifier_report_json(const std::vector<ModeratenessReport>& tables,
                                  const std::string& config_echo,
                                  const std::string& config_hash) {
    ordered_json j;
    j["experiment"] = "mollifier";
    ordered_json jt = ordered_json::array();
    for (const auto& table : tables) {
        ordered_json t;
        t["p"] = jnum(table.p);
        t["moderate"] = table.moderate;
        t["slope"] = jnum(table.fit.slope);
        t["intercept"] = jnum(table.fit.intercept);
        t["residual"] = jnum(table.fit.residual);
        t["residual_ceiling"] = jnum(table.residual_ceiling);
        ordered_json pts = ordered_json::array();
        for (const auto& pt : table.points) {
            ordered_json p;
            p["eps"] = jnum(pt.eps);
            p["resolved"] = pt.resolved;
            p["refine_factor"] = pt.refine_factor;
            p["norm"] = jnum(pt.norm);
            p["raw_mass"] = jnum(pt.raw_mass);
            pts.push_back(p);
        }
        t["points"] = pts;
        jt.push_back(t);
    }
    j["tables"] = jt;
    attach_config(j, config_echo, config_hash);
    return j.dump(2) + "\n";
}

std::string sweep_summary_text(const SweepReport& rep) {
    std::ostringstream os;
    os << "experiment: " << rep.experiment << " (" << rep.descriptor << ")\n";
    if (rep.aborted) os << "ABORTED: " << rep.abort_reason << '\n';
    os << "eps            resolved  value\n";
    for (const auto& r : rep.records) {
        double shown = rep.experiment == "existence" ? r.seminorm : r.extra;
        os << format_double(r.eps) << "  " << (r.resolved ? "yes" : "no ") << "      "
           << (r.failed ? ("FAILED " + r.failure) : format_double(shown)) << '\n';
    }
    for (const auto& [name, fit] : rep.fits)
        os << "fit[" << name << "]: slope " << format_double(fit.slope) << ", residual "
           << format_double(fit.residual) << '\n';
    if (rep.experiment == "uniqueness" && std::isfinite(rep.crossval_eps))
        os << "crossval: rel " << format_double(rep.crossval_rel) << " at eps "
           << format_double(rep.crossval_eps) << '\n';
    if (rep.experiment == "consistency")
        os << "discretization floor: " << format_double(rep.floor) << '\n';
    for (const auto& v : rep.verdicts)
        os << "verdict " << v.name << ": " << (v.pass ? "PASS" : "FAIL") << " (" << v.criterion
           << ")\n";
    os << "overall: " << (rep.all_passed() ? "PASS" : "FAIL") << '\n';
    return os.str();
}

std::string mollifier_summary_text(const std::vector<ModeratenessReport>& tables) {
    std::ostringstream os;
    os << "mollifier norm scaling\n";
    for (const auto& table : tables) {
        os << "p = " << format_double(table.p) << ": slope " << format_double(table.fit.slope)
           << ", residual " << format_double(table.fit.residual) << ", "
           << (table.moderate ? "moderate" : "NOT moderate") << '\n';
    }
    return os.str();
}

} // namespace fkg
