#include "fkg/selftest.hpp"

#include "fkg/dilation.hpp"
#include "fkg/dynamics.hpp"
#include "fkg/fft.hpp"
#include "fkg/field.hpp"
#include "fkg/fit.hpp"
#include "fkg/grid.hpp"
#include "fkg/mollifier.hpp"
#include "fkg/netsweep.hpp"
#include "fkg/presets.hpp"
#include "fkg/symbol.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <vector>

namespace fkg {

namespace {

struct Battery {
    std::ostream& out;
    int failures = 0;

    void check(const std::string& name, bool ok, const std::string& detail = "") {
        out << (ok ? "PASS " : "FAIL ") << name;
        if (!ok && !detail.empty()) out << "  [" << detail << "]";
        out << '\n';
        if (!ok) ++failures;
    }

    void close(const std::string& name, double got, double want, double tol) {
        std::ostringstream d;
        d << "got " << got << ", want " << want << " within " << tol;
        check(name, std::abs(got - want) <= tol, d.str());
    }

    void small(const std::string& name, double got, double tol) { close(name, got, 0.0, tol); }
};

Field random_field(const GridPtr& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<cplx> v(g->size());
    for (auto& z : v) z = cplx(dist(rng), dist(rng));
    return Field(g, std::move(v));
}

double gap(const Field& a, const Field& b) {
    Field d = a;
    d -= b;
    return d.l2_norm();
}

void transforms(Battery& B) {
    auto dil = DilationStructure::isotropic(2);
    auto g = make_grid(dil, {4.0, 6.0}, {16, 12});
    Field f = random_field(g, 11);

    Field rt = inverse_fft(forward_fft(f));
    B.small("fft_roundtrip", gap(rt, f), 1e-12);

    Field fh = forward_fft(f);
    B.close("parseval", fh.l2_norm(), f.l2_norm(), 1e-12 * f.l2_norm());

    // A pure box mode lands on a single spectral node.
    Field wave = plane_wave_preset({3, -2}, g->extents())(g);
    Field wh = forward_fft(wave);
    double off = 0.0;
    cplx peak = 0.0;
    for_each_index(*g, [&](std::size_t flat, std::span<const int> idx) {
        if (idx[0] == 3 && idx[1] == 12 - 2)
            peak = wh[flat];
        else
            off = std::max(off, std::abs(wh[flat]));
    });
    B.close("plane_wave_peak", std::abs(peak), std::sqrt(static_cast<double>(g->size())),
            1e-10);
    B.small("plane_wave_leakage", off, 1e-10);

    // Convolution with the unit-mass mollifier fixes constants; needs a
    // pitch fine enough to resolve the eps = 0.5 support.
    auto gc = make_grid(dil, {2.0, 1.5}, {16, 12});
    Field ones = sample(gc, [](std::span<const double>) { return cplx(1.0, 0.0); });
    Field psi = mollifier_scale(0.5, gc);
    Field smoothed = convolve(ones, psi);
    B.small("convolve_unit_mass", gap(smoothed, ones), 1e-10);
    Field fc = random_field(gc, 12);
    B.small("convolve_commutes", gap(convolve(fc, psi), convolve(psi, fc)), 1e-10);
}

void structure(Battery& B) {
    DilationStructure d({Rational(1), Rational(2)});
    B.close("homogeneous_dimension", d.q(), 3.0, 0.0);

    std::vector<double> x{0.7, -1.3};
    auto once = dilate(dilate(x, 2.0, d), 3.0, d);
    auto both = dilate(x, 6.0, d);
    B.small("dilate_group_action", std::abs(once[0] - both[0]) + std::abs(once[1] - both[1]),
            1e-12);

    RocklandSymbol a(d, {2, 1});
    std::vector<double> xi{0.9, 1.7};
    double r = 1.37;
    double lhs = a(dilate(xi, r, d));
    double rhs = std::pow(r, a.degree()) * a(xi);
    B.close("symbol_homogeneity", lhs, rhs, 1e-12 * std::abs(rhs));

    auto g = make_grid(DilationStructure::isotropic(1), {8.0}, {32});
    RocklandSymbol a1(DilationStructure::isotropic(1), {1});
    Field f = random_field(g, 5);
    Field s1 = apply_power(a1, 0.3, apply_power(a1, 0.5, f));
    Field s2 = apply_power(a1, 0.8, f);
    B.small("apply_power_semigroup", gap(s1, s2), 1e-10 * f.l2_norm());
    B.small("apply_power_identity", gap(apply_power(a1, 0.0, f), f), 0.0);
}

void mollifier(Battery& B) {
    // Axis 1 scales like eps^2, so it needs the finer pitch.
    auto dil = DilationStructure({Rational(1), Rational(2)});
    auto g = make_grid(dil, {4.0, 1.0}, {64, 256});
    for (double eps : {0.5, 0.35, 0.25}) {
        MollifierDiagnostics diag{};
        Field psi = mollifier_scale(eps, g, &diag);
        std::ostringstream name;
        name << "mollifier_mass_eps_" << eps;
        B.close(name.str(), psi.lp_norm(1.0), 1.0, 1e-12);
        std::ostringstream raw;
        raw << "mollifier_raw_mass_eps_" << eps;
        B.close(raw.str(), diag.raw_mass, 1.0, 0.2);
    }
    // sup scaling: ||psi_eps||_inf = eps^{-Q} ||psi||_inf after the
    // unit-mass correction, so halving eps scales by 2^Q = 8.
    Field p1 = mollifier_scale(0.5, g);
    Field p2 = mollifier_scale(0.25, g);
    B.close("mollifier_sup_scaling", p2.sup_norm() / p1.sup_norm(), 8.0, 0.8);
}

void flows(Battery& B) {
    auto dil = DilationStructure::isotropic(1);
    auto g = make_grid(dil, {12.0}, {64});
    RocklandSymbol a(dil, {1});

    // Free dynamics is exact per mode: a plane wave returns scaled by
    // cos(w t) regardless of step count.
    Field zero(g);
    KleinGordonIntegrator free_integ(g, a, 1.0, zero);
    Field wave = plane_wave_preset({4}, g->extents())(g);
    double xi = 2.0 * M_PI * 4.0 / 12.0;
    double w = std::pow(xi * xi, 0.5);
    double T = 3.0;
    SolverState st(wave, Field(g));
    int steps = 48;
    for (int k = 0; k < steps; ++k) st = free_integ.strang_step(st, T / steps);
    Field want = wave;
    want *= cplx(std::cos(w * T), 0.0);
    B.small("free_flow_exact", gap(st.u, want), 1e-10);

    // Constant mass 4: the mass flow alone rotates with mu = 2.
    Field m4 = sample(g, [](std::span<const double>) { return cplx(4.0, 0.0); });
    KleinGordonIntegrator integ4(g, a, 1.0, m4);
    Field ones = sample(g, [](std::span<const double>) { return cplx(1.0, 0.0); });
    SolverState rot(ones, Field(g));
    SolverState quarter = integ4.mass_flow(rot, M_PI / 2.0);
    Field minus = ones;
    minus *= cplx(-1.0, 0.0);
    B.small("mass_flow_quarter_turn", gap(quarter.u, minus), 1e-12);

    SolverState back = integ4.mass_flow(integ4.mass_flow(rot, 0.37), -0.37);
    B.small("mass_flow_reversible", gap(back.u, rot.u) + gap(back.p, rot.p), 1e-12);

    // Zero mass: mass_flow is the pure drift u += dt p.
    Field p0 = random_field(g, 7);
    SolverState drift0(Field(g), p0);
    SolverState drifted = free_integ.mass_flow(drift0, 0.25);
    Field dwant = p0;
    dwant *= cplx(0.25, 0.0);
    B.small("mass_flow_zero_drift", gap(drifted.u, dwant), 1e-14);

    // Energy of the free problem is conserved to roundoff.
    Field u0 = gaussian_preset({0.0}, 1.0, 1.0)(g);
    Trajectory traj = free_integ.solve(u0, Field(g), 2.0, 0.05, 5);
    B.small("free_energy_drift", traj.energy_drift(), 1e-12);

    // Picard fixed point agrees with the splitting on a short run.
    Field bump = sample(g, [](std::span<const double> x) {
        return cplx(std::exp(-x[0] * x[0]), 0.0);
    });
    KleinGordonIntegrator integ_b(g, a, 1.0, bump);
    double Ts = 0.5;
    Trajectory ts = integ_b.solve(u0, Field(g), Ts, Ts / 200.0, 200);
    Field pic = integ_b.picard_duhamel_solve(u0, Field(g), Ts, Ts / 200.0);
    B.small("picard_vs_strang", gap(ts.back().u, pic) / pic.l2_norm(), 1e-3);
}

void fits(Battery& B) {
    std::vector<double> eps, y3, yc;
    for (int i = 0; i < 6; ++i) {
        double e = 0.5 * std::pow(0.7, i);
        eps.push_back(e);
        y3.push_back(std::pow(e, -3.0));
        yc.push_back(2.5);
    }
    FitResult f3 = fit_exponent(eps, y3);
    B.close("fit_cubic_slope", f3.slope, 3.0, 1e-10);
    B.small("fit_cubic_residual", f3.residual, 1e-10);
    FitResult fc = fit_exponent(eps, yc);
    B.small("fit_constant_slope", std::abs(fc.slope), 1e-12);

    std::vector<double> en, ev2, evexp, ez;
    for (int i = 0; i < 8; ++i) {
        double e = 0.5 * std::pow(2.0, -0.5 * i);
        en.push_back(e);
        ev2.push_back(e * e);
        evexp.push_back(std::exp(-1.0 / e));
        ez.push_back(0.0);
    }
    auto rexp = negligibility_check(en, evexp, 10, 1e-300);
    B.check("negligible_exp", rexp.negligible);
    auto r2 = negligibility_check(en, ev2, 3, 1e-300);
    B.check("negligible_eps2_fails_k3", !r2.negligible && !r2.margins.back().pass &&
                                            r2.margins[0].pass && r2.margins[1].pass);
    auto rz = negligibility_check(en, ez, 10, 0.0);
    B.check("negligible_zero", rz.negligible);
}

} // namespace

bool run_selftest(std::ostream& out) {
    Battery B{out};
    transforms(B);
    structure(B);
    mollifier(B);
    flows(B);
    fits(B);
    out << (B.failures == 0 ? "selftest: all checks passed"
                            : "selftest: FAILURES: " + std::to_string(B.failures))
        << '\n';
    return B.failures == 0;
}

} // namespace fkg
