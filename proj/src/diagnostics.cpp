#include "fkg/diagnostics.hpp"

#include "fkg/errors.hpp"
#include "fkg/fft.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fkg {

EnergyRecord energy(double t, const Field& u, const Field& p, const Field& mass,
                    const RocklandSymbol& a, double s) {
    if (!u.grid()->same_as(*p.grid()) || !u.grid()->same_as(*mass.grid()))
        throw std::invalid_argument("energy requires fields on one grid");
    const double vol = u.grid()->cell_volume();

    EnergyRecord rec;
    rec.t = t;
    for (std::size_t i = 0; i < p.size(); ++i) rec.kinetic += std::norm(p[i]);
    rec.kinetic *= vol;

    const Field uhat = forward_fft(u);
    const std::vector<double> av = a.values_on(*u.grid());
    for (std::size_t i = 0; i < uhat.size(); ++i)
        rec.elastic += (av[i] > 0.0 ? std::pow(av[i], s) : 0.0) * std::norm(uhat[i]);
    rec.elastic *= vol;

    for (std::size_t i = 0; i < u.size(); ++i) rec.potential += mass[i].real() * std::norm(u[i]);
    rec.potential *= vol;

    rec.total = rec.kinetic + rec.elastic + rec.potential;
    return rec;
}

double sobolev_dot_norm(const Field& f, double sigma, const RocklandSymbol& a) {
    if (sigma < 0.0) throw std::domain_error("sobolev order must be nonnegative");
    if (sigma == 0.0) return f.l2_norm();
    return apply_power(a, sigma / a.degree(), f).l2_norm();
}

double sobolev_h_norm(const Field& f, double sigma, const RocklandSymbol& a) {
    return sobolev_dot_norm(f, sigma, a) + f.l2_norm();
}

double sobolev_lq_norm(const Field& f, double sigma, double q, const RocklandSymbol& a) {
    if (sigma < 0.0) throw std::domain_error("sobolev order must be nonnegative");
    if (sigma == 0.0) return f.lp_norm(q);
    return apply_power(a, sigma / a.degree(), f).lp_norm(q);
}

double embedding_ratio(const Field& f, double b, double qt0, double a_ord, double q0,
                       const RocklandSymbol& a) {
    if (!(1.0 < qt0 && qt0 < q0) || std::isinf(q0))
        throw ConfigError("embedding ratio requires 1 < qt0 < q0 < inf");
    const double q_hom = a.dilation().q();
    const double relation = b - a_ord - q_hom * (1.0 / qt0 - 1.0 / q0);
    if (std::abs(relation) > 1e-9) {
        std::ostringstream msg;
        msg << "embedding exponents violate b - a = Q(1/q~0 - 1/q0) by " << relation;
        throw ConfigError(msg.str());
    }
    const double denom = sobolev_lq_norm(f, b, qt0, a);
    if (denom == 0.0) throw std::domain_error("embedding ratio of the zero field");
    return sobolev_lq_norm(f, a_ord, q0, a) / denom;
}

} // namespace fkg
