#include <doctest.h>

#include "fkg/dynamics.hpp"
#include "fkg/errors.hpp"
#include "fkg/field.hpp"
#include "fkg/grid.hpp"
#include "fkg/presets.hpp"
#include "fkg/symbol.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

using namespace fkg;

namespace {

double gap(const Field& a, const Field& b) {
    Field d = a;
    d -= b;
    return d.l2_norm();
}

Field constant_field(const GridPtr& g, double v) {
    return sample(g, [v](std::span<const double>) { return cplx(v, 0.0); });
}

struct Lab1D {
    GridPtr g = make_grid(DilationStructure::isotropic(1), {12.0}, {64});
    RocklandSymbol a{DilationStructure::isotropic(1), {1}};
};

} // namespace

TEST_SUITE("dynamics") {

TEST_CASE("free flow rotates each mode exactly") {
    Lab1D lab;
    KleinGordonIntegrator integ(lab.g, lab.a, 1.0, Field(lab.g));
    Field wave = plane_wave_preset({5}, lab.g->extents())(lab.g);
    const double xi = 2.0 * M_PI * 5.0 / 12.0;
    const double w = std::sqrt(xi * xi); // s = 1: omega = a(xi)^{1/2}

    SUBCASE("u0 cosine branch") {
        SolverState st(wave, Field(lab.g));
        double t = 0.9;
        SolverState out = integ.free_flow(st, t);
        Field want_u = wave;
        want_u *= cplx(std::cos(w * t), 0.0);
        Field want_p = wave;
        want_p *= cplx(-w * std::sin(w * t), 0.0);
        CHECK(gap(out.u, want_u) < 1e-12 * wave.l2_norm());
        CHECK(gap(out.p, want_p) < 1e-12 * wave.l2_norm() * w);
    }
    SUBCASE("p0 sinc branch") {
        SolverState st(Field(lab.g), wave);
        double t = 1.3;
        SolverState out = integ.free_flow(st, t);
        Field want_u = wave;
        want_u *= cplx(std::sin(w * t) / w, 0.0);
        CHECK(gap(out.u, want_u) < 1e-12 * wave.l2_norm());
    }
    SUBCASE("zero mode drifts linearly") {
        Field ones = constant_field(lab.g, 1.0);
        SolverState st(Field(lab.g), ones);
        SolverState out = integ.free_flow(st, 0.7);
        Field want = ones;
        want *= cplx(0.7, 0.0);
        CHECK(gap(out.u, want) < 1e-13);
    }
    SUBCASE("group property over many steps") {
        SolverState st(wave, Field(lab.g));
        double T = 10.0;
        for (double dt : {0.5, 0.1, 0.025}) {
            SolverState cur = st;
            int n = static_cast<int>(std::llround(T / dt));
            for (int k = 0; k < n; ++k) cur = integ.free_flow(cur, dt);
            Field want = wave;
            want *= cplx(std::cos(w * T), 0.0);
            CAPTURE(dt);
            CHECK(gap(cur.u, want) < 1e-10);
        }
    }
}

TEST_CASE("mass flow is the exact frozen-x rotation") {
    Lab1D lab;

    SUBCASE("zero mass reduces to the drift") {
        KleinGordonIntegrator integ(lab.g, lab.a, 1.0, Field(lab.g));
        Field p0 = gaussian_preset({0.0}, 1.0, 1.0)(lab.g);
        SolverState st(Field(lab.g), p0);
        SolverState out = integ.mass_flow(st, 0.4);
        Field want = p0;
        want *= cplx(0.4, 0.0);
        CHECK(gap(out.u, want) < 1e-14);
        CHECK(gap(out.p, p0) == 0.0);
    }
    SUBCASE("constant mass 4 makes a quarter turn at pi/2") {
        KleinGordonIntegrator integ(lab.g, lab.a, 1.0, constant_field(lab.g, 4.0));
        Field ones = constant_field(lab.g, 1.0);
        SolverState st(ones, Field(lab.g));
        SolverState out = integ.mass_flow(st, M_PI / 2.0);
        Field want = ones;
        want *= cplx(-1.0, 0.0);
        CHECK(gap(out.u, want) < 1e-12);
    }
    SUBCASE("reversible") {
        KleinGordonIntegrator integ(lab.g, lab.a, 1.0, constant_field(lab.g, 2.7));
        Field u0 = gaussian_preset({1.0}, 0.8, 1.0)(lab.g);
        Field p0 = gaussian_preset({-1.0}, 1.1, 0.5)(lab.g);
        SolverState st(u0, p0);
        SolverState back = integ.mass_flow(integ.mass_flow(st, 0.61), -0.61);
        CHECK(gap(back.u, u0) < 1e-13);
        CHECK(gap(back.p, p0) < 1e-13);
    }
}

TEST_CASE("strang step") {
    Lab1D lab;

    SUBCASE("massless step equals the exact free flow") {
        KleinGordonIntegrator integ(lab.g, lab.a, 1.0, Field(lab.g));
        Field u0 = gaussian_preset({0.0}, 1.0, 1.0)(lab.g);
        Field p0 = gaussian_preset({2.0}, 1.5, 0.3)(lab.g);
        SolverState st(u0, p0);
        SolverState split = integ.strang_step(st, 0.3);
        SolverState exact = integ.free_flow(st, 0.3);
        CHECK(gap(split.u, exact.u) < 1e-12);
        CHECK(gap(split.p, exact.p) < 1e-12);
    }
    SUBCASE("second order against the oracle") {
        // Constant mass 1: halving dt shrinks the defect about fourfold.
        KleinGordonIntegrator integ(lab.g, lab.a, 1.0, constant_field(lab.g, 1.0));
        Field u0 = gaussian_preset({0.0}, 1.0, 1.0)(lab.g);
        Field u1(lab.g);
        const double T = 2.0;
        Field ref = integ.picard_duhamel_solve(u0, u1, T, 0.002);
        double prev = 0.0;
        std::vector<double> errs;
        for (double dt : {0.1, 0.05, 0.025}) {
            Trajectory traj = integ.solve(u0, u1, T, dt, 1 << 20);
            errs.push_back(gap(traj.back().u, ref));
        }
        for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
            double ratio = errs[i] / errs[i + 1];
            CAPTURE(i);
            CHECK(ratio > 3.3);
            CHECK(ratio < 4.7);
        }
        (void)prev;
    }
}

TEST_CASE("solve bookkeeping") {
    Lab1D lab;
    KleinGordonIntegrator integ(lab.g, lab.a, 1.0, constant_field(lab.g, 1.0));
    Field u0 = gaussian_preset({0.0}, 1.0, 1.0)(lab.g);
    Field u1(lab.g);

    SUBCASE("snapshot ledger covers [0, T]") {
        Trajectory traj = integ.solve(u0, u1, 1.0, 0.01, 10);
        CHECK(traj.steps == 100);
        CHECK(traj.snapshots.front().t == 0.0);
        CHECK(traj.snapshots.back().t == doctest::Approx(1.0));
        CHECK(traj.snapshots.size() == 11); // 0, 10, ..., 100
        for (std::size_t i = 0; i + 1 < traj.snapshots.size(); ++i)
            CHECK(traj.snapshots[i].t < traj.snapshots[i + 1].t);
    }
    SUBCASE("final partial stride still lands on T") {
        Trajectory traj = integ.solve(u0, u1, 1.0, 0.01, 7);
        CHECK(traj.snapshots.back().t == doctest::Approx(1.0));
    }
    SUBCASE("default dt divides T") {
        double dt = integ.default_dt(3.0);
        double steps = 3.0 / dt;
        CHECK(std::abs(steps - std::llround(steps)) < 1e-9);
        CHECK(dt <= 3.0 / 100.0 * (1 + 1e-12));
    }
    SUBCASE("non-dividing dt is rejected") {
        CHECK_THROWS_AS((void)integ.solve(u0, u1, 1.0, 0.3, 10), ConfigError);
        CHECK_THROWS_AS((void)integ.solve(u0, u1, -1.0, 0.1, 10), ConfigError);
        CHECK_THROWS_AS((void)integ.solve(u0, u1, 1.0, 0.1, 0), ConfigError);
    }
    SUBCASE("nan data aborts with a numerical error") {
        std::vector<cplx> bad(lab.g->size(), cplx(0.0, 0.0));
        bad[3] = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
        CHECK_THROWS_AS((void)integ.solve(Field(lab.g, bad), u1, 1.0, 0.1, 10),
                        NumericalError);
    }
    SUBCASE("negative mass rejected at construction") {
        CHECK_THROWS_AS(KleinGordonIntegrator(lab.g, lab.a, 1.0, constant_field(lab.g, -0.5)),
                        NumericalError);
        CHECK_THROWS_AS(KleinGordonIntegrator(lab.g, lab.a, 0.0, Field(lab.g)), ConfigError);
    }
}

TEST_CASE("energy ledger") {
    Lab1D lab;
    Field u0 = gaussian_preset({0.0}, 1.0, 1.0)(lab.g);
    Field u1 = gaussian_preset({1.0}, 1.0, 0.4)(lab.g);

    SUBCASE("free problem conserves energy to roundoff") {
        KleinGordonIntegrator integ(lab.g, lab.a, 1.0, Field(lab.g));
        Trajectory traj = integ.solve(u0, u1, 4.0, 0.05, 5);
        CHECK(traj.energy_drift() < 1e-12);
    }
    SUBCASE("massive problem drifts only at O(dt^2)") {
        KleinGordonIntegrator integ(lab.g, lab.a, 1.0, constant_field(lab.g, 1.0));
        Trajectory coarse = integ.solve(u0, u1, 2.0, 0.04, 5);
        Trajectory fine = integ.solve(u0, u1, 2.0, 0.01, 5);
        CHECK(coarse.energy_drift() < 1e-2);
        CHECK(fine.energy_drift() < coarse.energy_drift());
        // components are the expected ones at t = 0
        const auto& e0 = coarse.snapshots.front().energy;
        CHECK(e0.kinetic == doctest::Approx(u1.l2_norm() * u1.l2_norm()).epsilon(1e-10));
        CHECK(e0.total == doctest::Approx(e0.kinetic + e0.elastic + e0.potential));
    }
}

TEST_CASE("picard oracle") {
    Lab1D lab;
    Field u0 = gaussian_preset({0.0}, 1.0, 1.0)(lab.g);
    Field u1(lab.g);

    SUBCASE("free case reproduces the exact flow") {
        KleinGordonIntegrator integ(lab.g, lab.a, 1.0, Field(lab.g));
        Field pic = integ.picard_duhamel_solve(u0, u1, 1.0, 0.01);
        Trajectory exact = integ.solve(u0, u1, 1.0, 0.5, 1);
        CHECK(gap(pic, exact.back().u) < 1e-9);
    }
    SUBCASE("matches the splitting for a smooth bounded mass") {
        Field bump = sample(lab.g, [](std::span<const double> x) {
            return cplx(1.5 * std::exp(-x[0] * x[0]), 0.0);
        });
        KleinGordonIntegrator integ(lab.g, lab.a, 1.0, bump);
        const double T = 1.0;
        Field pic = integ.picard_duhamel_solve(u0, u1, T, 0.002);
        Trajectory traj = integ.solve(u0, u1, T, 0.002, 1 << 20);
        CHECK(gap(traj.back().u, pic) / pic.l2_norm() < 1e-5);
    }
    SUBCASE("subinterval restart handles strong mass") {
        KleinGordonIntegrator integ(lab.g, lab.a, 1.0, constant_field(lab.g, 9.0));
        // tau_max = sqrt(0.5/9) ~ 0.24 << T, forcing several restarts;
        // constant mass shifts the dispersion exactly: w' = sqrt(w^2 + 9)
        // on each mode, so the plane-wave answer is closed form.
        Field wave = plane_wave_preset({3}, lab.g->extents())(lab.g);
        const double xi = 2.0 * M_PI * 3.0 / 12.0;
        const double wp = std::sqrt(xi * xi + 9.0);
        const double T = 1.5;
        Field pic = integ.picard_duhamel_solve(wave, Field(lab.g), T, 0.00025);
        Field want = wave;
        want *= cplx(std::cos(wp * T), 0.0);
        CHECK(gap(pic, want) / want.l2_norm() < 1e-6);
    }
}

TEST_CASE("inhomogeneous solve") {
    Lab1D lab;
    KleinGordonIntegrator integ(lab.g, lab.a, 1.0, Field(lab.g));
    Field wave = plane_wave_preset({4}, lab.g->extents())(lab.g);
    const double xi = 2.0 * M_PI * 4.0 / 12.0;
    const double w = std::sqrt(xi * xi);

    SUBCASE("constant-in-time single-mode source has the closed form") {
        // u'' + w^2 u = g => u(T) = (1 - cos(w T)) / w^2 * g
        auto source = [&](double) { return wave; };
        const double T = 1.2;
        Trajectory traj = integ.inhomogeneous_solve(source, T, T / 600.0, 1 << 20);
        Field want = wave;
        want *= cplx((1.0 - std::cos(w * T)) / (w * w), 0.0);
        CHECK(gap(traj.back().u, want) / want.l2_norm() < 1e-5);
    }
    SUBCASE("zero source stays zero") {
        auto source = [&](double) { return Field(lab.g); };
        Trajectory traj = integ.inhomogeneous_solve(source, 1.0, 0.02, 10);
        CHECK(traj.back().u.l2_norm() == 0.0);
        CHECK(traj.back().p.l2_norm() == 0.0);
    }
}

} // TEST_SUITE
