#include "fkg/mass.hpp"

#include "fkg/errors.hpp"
#include "fkg/fft.hpp"
#include "fkg/mollifier.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace fkg {

MassSpec MassSpec::zero() { return MassSpec{}; }

MassSpec MassSpec::bounded(std::function<double(std::span<const double>)> fn, Regularity reg,
                           std::string label) {
    MassSpec s;
    s.kind = Kind::Bounded;
    s.bounded_fn = std::move(fn);
    s.regularity = reg;
    s.label = std::move(label);
    return s;
}

MassSpec MassSpec::dirac_delta(double weight) {
    if (weight < 0.0) throw ConfigError("delta mass weight must be nonnegative");
    MassSpec s;
    s.kind = Kind::DiracDelta;
    s.weight = weight;
    s.label = "dirac_delta";
    return s;
}

MassSpec MassSpec::delta_squared() {
    MassSpec s;
    s.kind = Kind::DeltaSquared;
    s.label = "delta_squared";
    return s;
}

MassSpec MassSpec::inverse_power(double gamma, double cap_radius) {
    if (!(gamma > 0.0)) throw ConfigError("inverse power exponent must be positive");
    if (!(cap_radius > 0.0)) throw ConfigError("inverse power cap radius must be positive");
    MassSpec s;
    s.kind = Kind::InversePower;
    s.gamma = gamma;
    s.cap_radius = cap_radius;
    s.label = "inverse_power";
    return s;
}

MassSpec MassSpec::perturbed(MassSpec base_spec) {
    MassSpec s;
    s.kind = Kind::Perturbed;
    s.label = base_spec.label + "+exp(-1/eps)";
    s.base = std::make_shared<const MassSpec>(std::move(base_spec));
    return s;
}

namespace {

void clamp_nonnegative(Field& f, const char* what) {
    for (std::size_t i = 0; i < f.size(); ++i) {
        double v = f[i].real();
        if (v < -1e-12) {
            std::ostringstream msg;
            msg << what << " produced value " << v << " below -1e-12";
            throw NumericalError(msg.str());
        }
        f[i] = cplx(v < 0.0 ? 0.0 : v, 0.0);
    }
}

Field realize(const MassSpec& spec, double eps, const GridPtr& grid) {
    switch (spec.kind) {
    case MassSpec::Kind::Zero:
        return Field(grid);
    case MassSpec::Kind::Bounded: {
        Field m = sample(grid, [&](std::span<const double> x) {
            return cplx(spec.bounded_fn(x), 0.0);
        });
        Field conv = convolve(m, mollifier_scale(eps, grid));
        clamp_nonnegative(conv, "bounded mass regularization");
        return conv;
    }
    case MassSpec::Kind::DiracDelta: {
        Field m = mollifier_scale(eps, grid);
        m *= cplx(spec.weight, 0.0);
        return m;
    }
    case MassSpec::Kind::DeltaSquared: {
        Field m = mollifier_scale(eps, grid);
        m.hadamard(m);
        return m;
    }
    case MassSpec::Kind::InversePower: {
        const double cap = std::pow(spec.cap_radius, -spec.gamma);
        Field m = sample(grid, [&](std::span<const double> x) {
            double r2 = 0.0;
            for (double v : x) r2 += v * v;
            const double r = std::sqrt(r2);
            return cplx(r > spec.cap_radius ? std::pow(r, -spec.gamma) : cap, 0.0);
        });
        Field conv = convolve(m, mollifier_scale(eps, grid));
        clamp_nonnegative(conv, "inverse power regularization");
        return conv;
    }
    case MassSpec::Kind::Perturbed: {
        Field m = realize(*spec.base, eps, grid);
        const cplx shift(std::exp(-1.0 / eps), 0.0);
        for (std::size_t i = 0; i < m.size(); ++i) m[i] += shift;
        return m;
    }
    }
    throw std::logic_error("unhandled mass kind");
}

} // namespace

RegularizedMass regularize(const MassSpec& spec, double eps, const GridPtr& grid, double nu_s) {
    if (!(eps > 0.0) || eps > 1.0) throw std::domain_error("regularize requires eps in (0,1]");
    if (!(nu_s > 0.0)) throw std::domain_error("regularize requires nu*s > 0");

    Field field = realize(spec, eps, grid);
    const double q = grid->dilation().q();
    LebesgueNorm crit{q / nu_s, 0.0, q / nu_s >= 1.0};
    if (crit.valid) crit.value = field.lp_norm(crit.p);
    LebesgueNorm crit2{2.0 * q / nu_s, 0.0, 2.0 * q / nu_s >= 1.0};
    if (crit2.valid) crit2.value = field.lp_norm(crit2.p);
    const double l1 = field.lp_norm(1.0);
    const double linf = field.sup_norm();
    return RegularizedMass{eps, std::move(field), l1, linf, crit, crit2};
}

ModeratenessReport moderateness_witness(const MassSpec& spec, double p, const EpsilonNet& net,
                                        const GridPtr& grid, double nu_s, int refine_limit,
                                        double residual_ceiling) {
    ModeratenessReport rep;
    rep.p = p;
    rep.residual_ceiling = residual_ceiling;

    std::vector<double> eps_ok, norm_ok;
    for (int i = 0; i < net.size(); ++i) {
        MassNetPoint pt;
        pt.eps = net[i];
        GridPtr g = grid;
        int factor = 1;
        while (!mollifier_resolved(pt.eps, *g) && factor < refine_limit) {
            factor *= 2;
            g = refined_grid(*grid, factor);
        }
        pt.refine_factor = factor;
        pt.resolved = mollifier_resolved(pt.eps, *g);
        if (pt.resolved) {
            MollifierDiagnostics diag;
            Field psi = mollifier_scale(pt.eps, g, &diag);
            pt.raw_mass = diag.raw_mass;
            RegularizedMass m = regularize(spec, pt.eps, g, nu_s);
            pt.norm = std::isinf(p) ? m.field.sup_norm() : m.field.lp_norm(p);
            eps_ok.push_back(pt.eps);
            norm_ok.push_back(pt.norm);
        }
        rep.points.push_back(pt);
    }

    if (eps_ok.size() < 5)
        throw ResolutionError("moderateness fit needs at least 5 resolved net points, got " +
                              std::to_string(eps_ok.size()));
    rep.fit = fit_exponent(eps_ok, norm_ok);
    rep.moderate = rep.fit.residual <= residual_ceiling;
    return rep;
}

} // namespace fkg
