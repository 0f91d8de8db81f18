#include <doctest.h>

#include "fkg/errors.hpp"
#include "fkg/mass.hpp"
#include "fkg/netsweep.hpp"
#include "fkg/presets.hpp"

#include <cmath>
#include <vector>

using namespace fkg;

namespace {

// Small, fast laboratory: 1D, nu = 2, s = 0.4 so Q = 1 > nu s = 0.8.
LabSetup small_lab(int n = 64) {
    auto dil = DilationStructure::isotropic(1);
    return LabSetup{make_grid(dil, {12.0}, {n}), RocklandSymbol(dil, {1}), 0.4};
}

DataSpec gaussian_data() {
    return DataSpec{gaussian_preset({0.0}, 1.0, 1.0), zero_preset(), "gaussian+zero"};
}

SolverConfig fast_solver(double T = 0.5) {
    SolverConfig cfg;
    cfg.T = T;
    cfg.snapshot_stride = 10;
    cfg.refine_limit = 4;
    return cfg;
}

const SweepVerdict* verdict(const SweepReport& rep, const std::string& name) {
    for (const auto& v : rep.verdicts)
        if (v.name == name) return &v;
    return nullptr;
}

} // namespace

TEST_SUITE("experiments") {

TEST_CASE("negligibility verdicts") {
    std::vector<double> eps, vexp, v2, vz;
    for (int i = 0; i < 10; ++i) {
        double e = 0.5 * std::pow(2.0, -0.5 * i);
        eps.push_back(e);
        vexp.push_back(std::exp(-1.0 / e));
        v2.push_back(e * e);
        vz.push_back(0.0);
    }
    SUBCASE("exponentially small series passes every k") {
        auto rep = negligibility_check(eps, vexp, 10, 1e-300);
        CHECK(rep.negligible);
        CHECK(rep.margins.size() == 10);
        for (const auto& m : rep.margins) {
            CHECK(m.pass);
            CHECK(m.above_floor == 10);
        }
    }
    SUBCASE("eps^2 survives k <= 2 and fails at k = 3") {
        auto rep = negligibility_check(eps, v2, 3, 1e-300);
        CHECK_FALSE(rep.negligible);
        CHECK(rep.margins[0].pass);
        CHECK(rep.margins[1].pass);
        CHECK_FALSE(rep.margins[2].pass);
    }
    SUBCASE("identically zero series is negligible") {
        auto rep = negligibility_check(eps, vz, 10, 0.0);
        CHECK(rep.negligible);
        for (const auto& m : rep.margins) CHECK(m.above_floor == 0);
    }
    SUBCASE("floor absorbs a roundoff tail") {
        auto v = vexp;
        v.back() = 3e-13; // noise floor hit
        auto rep = negligibility_check(eps, v, 10, 1e-12);
        CHECK(rep.negligible);
    }
    SUBCASE("verdict soundness: failing margin forces a failing verdict") {
        auto rep = negligibility_check(eps, v2, 5, 1e-300);
        bool any_fail = false;
        for (const auto& m : rep.margins) any_fail |= !m.pass;
        CHECK(any_fail);
        CHECK_FALSE(rep.negligible);
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS((void)negligibility_check(eps, vexp, 0, 0.0),
                        std::invalid_argument);
        std::vector<double> up(eps.rbegin(), eps.rend());
        CHECK_THROWS_AS((void)negligibility_check(up, vexp, 3, 0.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            (void)negligibility_check(std::vector<double>{0.5}, std::vector<double>{1.0},
                                      3, 0.0),
            std::invalid_argument);
    }
}

TEST_CASE("existence sweep") {
    LabSetup lab = small_lab();
    EpsilonNet net(0.5, std::pow(2.0, -0.5), 6);

    SUBCASE("zero mass: eps-independent seminorm, slope zero") {
        SweepReport rep =
            existence_sweep(MassSpec::zero(), gaussian_data(), net, lab, fast_solver());
        REQUIRE_FALSE(rep.aborted);
        REQUIRE(rep.fits.count("seminorm"));
        CHECK(std::abs(rep.fits.at("seminorm").slope) < 1e-8);
        const auto* mod = verdict(rep, "moderate");
        REQUIRE(mod);
        CHECK(mod->pass);
        const auto* rb = verdict(rep, "ratios_bounded");
        REQUIRE(rb);
        CHECK(rb->pass);
        CHECK(rep.all_passed());
        // every resolved record carries its raw series entry
        for (const auto& r : rep.records)
            if (r.resolved) {
                CHECK(r.seminorm > 0.0);
                CHECK(std::isfinite(r.ratio_sup));
                CHECK(std::isfinite(r.ratio_crit)); // Q > nu s here
            }
    }
    SUBCASE("bounded bump: uniformly bounded, still flat") {
        MassSpec spec = MassSpec::bounded(gaussian_bump({0.0}, 1.0, 1.0),
                                          MassSpec::Regularity::C0, "bump");
        SweepReport rep = existence_sweep(spec, gaussian_data(), net, lab, fast_solver());
        REQUIRE_FALSE(rep.aborted);
        REQUIRE(rep.fits.count("seminorm"));
        CHECK(std::abs(rep.fits.at("seminorm").slope) < 0.05);
        CHECK(verdict(rep, "moderate")->pass);
    }
    SUBCASE("dirac delta: finite fitted exponent with small residual") {
        SweepReport rep = existence_sweep(MassSpec::dirac_delta(1.0), gaussian_data(), net,
                                          lab, fast_solver());
        REQUIRE_FALSE(rep.aborted);
        REQUIRE(rep.fits.count("seminorm"));
        CHECK(std::isfinite(rep.fits.at("seminorm").slope));
        CHECK(verdict(rep, "moderate")->pass);
        CHECK(rep.fits.at("seminorm").residual <= 0.1);
    }
    SUBCASE("unresolvable tail is flagged and excluded") {
        LabSetup coarse = small_lab(16);
        EpsilonNet wide(0.5, 0.5, 8);
        SolverConfig cfg = fast_solver(0.2);
        cfg.refine_limit = 2;
        SweepReport rep = existence_sweep(MassSpec::dirac_delta(1.0), gaussian_data(), wide,
                                          coarse, cfg);
        int unresolved = 0;
        for (const auto& r : rep.records) {
            if (!r.resolved) {
                ++unresolved;
                CHECK_FALSE(r.failed); // flagged, not an error
                CHECK(std::isnan(r.seminorm));
            }
        }
        CHECK(unresolved > 0);
    }
}

TEST_CASE("uniqueness experiment") {
    LabSetup lab = small_lab(32);
    EpsilonNet net(0.5, std::pow(2.0, -0.5), 6);
    SolverConfig cfg = fast_solver(0.5);
    cfg.crossval_tol = 1e-5;

    SUBCASE("zero perturbation leaves an exactly zero difference") {
        SweepReport rep = uniqueness_experiment(MassSpec::dirac_delta(1.0),
                                                PerturbationKind::None, gaussian_data(), net,
                                                lab, cfg);
        REQUIRE_FALSE(rep.aborted);
        for (const auto& r : rep.records)
            if (r.resolved) CHECK(r.extra == 0.0);
        REQUIRE(rep.negligibility.has_value());
        CHECK(rep.negligibility->negligible);
        CHECK(verdict(rep, "negligible")->pass);
        CHECK(verdict(rep, "crossval")->pass);
        CHECK(rep.all_passed());
    }
    SUBCASE("exponential shift is negligible and cross-validates") {
        // the decay window sits below eps ~ 0.12, so the net must stay
        // resolvable down there: finer base grid, deeper net, more refinement
        LabSetup fine = small_lab(128);
        EpsilonNet deep(0.5, std::pow(2.0, -0.5), 8);
        cfg.refine_limit = 8;
        SweepReport rep = uniqueness_experiment(MassSpec::dirac_delta(1.0),
                                                PerturbationKind::ExpShift, gaussian_data(),
                                                deep, fine, cfg);
        REQUIRE_FALSE(rep.aborted);
        REQUIRE(rep.negligibility.has_value());
        CHECK(rep.negligibility->negligible);
        CHECK(verdict(rep, "negligible")->pass);
        const auto* cv = verdict(rep, "crossval");
        REQUIRE(cv);
        CHECK(cv->pass);
        CHECK(rep.crossval_rel <= cfg.crossval_tol);
        CHECK(rep.crossval_eps > 0.0);
        // D decreases fast along the net once above the floor
        double prev = -1.0;
        for (const auto& r : rep.records)
            if (r.resolved && r.extra > rep.negligibility->floor) {
                if (prev > 0.0) CHECK(r.extra < prev);
                prev = r.extra;
            }
    }
}

TEST_CASE("consistency experiment") {
    LabSetup lab = small_lab(32);
    EpsilonNet net(0.5, std::pow(2.0, -0.5), 6);
    SolverConfig cfg = fast_solver(0.5);
    // coarse base step: the floor must dominate the regularization tail
    cfg.dt = 0.125;

    SUBCASE("zero mass: gap sits at the aliasing floor") {
        SweepReport rep = consistency_experiment(MassSpec::zero(), gaussian_data(), net, lab,
                                                 cfg);
        REQUIRE_FALSE(rep.aborted);
        CHECK(rep.floor < 1e-9); // base-grid tail aliasing only
        for (const auto& r : rep.records)
            if (r.resolved) CHECK(r.extra <= std::max(rep.floor, 1e-12));
        CHECK(verdict(rep, "decreasing")->pass);
        CHECK(verdict(rep, "floor")->pass);
        CHECK(rep.all_passed());
    }
    SUBCASE("gaussian bump converges to the reference") {
        MassSpec spec = MassSpec::bounded(gaussian_bump({0.0}, 1.0, 1.0),
                                          MassSpec::Regularity::C0, "bump");
        SweepReport rep = consistency_experiment(spec, gaussian_data(), net, lab, cfg);
        REQUIRE_FALSE(rep.aborted);
        CHECK(rep.floor > 0.0);
        CHECK(verdict(rep, "decreasing")->pass);
        CHECK(verdict(rep, "floor")->pass);
        // the series itself decreases until the floor region
        const auto& recs = rep.records;
        REQUIRE(recs.size() >= 2);
        CHECK(recs[1].extra < recs[0].extra);
    }
    SUBCASE("singular specs are rejected up front") {
        CHECK_THROWS_AS((void)consistency_experiment(MassSpec::dirac_delta(1.0),
                                                     gaussian_data(), net, lab, cfg),
                        ConfigError);
    }
}

} // TEST_SUITE
