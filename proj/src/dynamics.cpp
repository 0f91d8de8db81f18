#include "fkg/dynamics.hpp"

#include "fkg/errors.hpp"
#include "fkg/fft.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fkg {
namespace {

// sin(z)/z with a Taylor branch guarding the cancellation-prone origin.
double sinc(double z) {
    if (std::abs(z) < 1e-4) {
        const double z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

void check_divides(double T, double dt, long long& steps) {
    if (!(dt > 0.0)) throw ConfigError("time step must be positive");
    steps = std::llround(T / dt);
    if (steps < 1 || std::abs(static_cast<double>(steps) * dt - T) > 1e-8 * std::max(T, 1.0))
        throw ConfigError("time step does not divide the final time");
}

} // namespace

SolverState::SolverState(Field u_, Field p_, double t_) : t(t_), u(std::move(u_)), p(std::move(p_)) {
    if (!u.grid()->same_as(*p.grid()))
        throw std::invalid_argument("state fields live on different grids");
}

double Trajectory::energy_drift() const {
    if (snapshots.empty()) return 0.0;
    const double e0 = snapshots.front().energy.total;
    double worst = 0.0;
    for (const auto& s : snapshots) worst = std::max(worst, std::abs(s.energy.total - e0));
    return e0 > 0.0 ? worst / e0 : worst;
}

KleinGordonIntegrator::KleinGordonIntegrator(GridPtr grid, RocklandSymbol symbol, double s,
                                             Field mass)
    : grid_(std::move(grid)), symbol_(std::move(symbol)), s_(s), mass_(std::move(mass)) {
    if (!(s_ > 0.0)) throw ConfigError("fractional power s must be positive");
    if (!mass_.grid()->same_as(*grid_))
        throw std::invalid_argument("mass field grid mismatch");

    const std::vector<double> av = symbol_.values_on(*grid_);
    omega_.resize(av.size());
    omega_max_ = 0.0;
    for (std::size_t i = 0; i < av.size(); ++i) {
        omega_[i] = av[i] > 0.0 ? std::pow(av[i], 0.5 * s_) : 0.0;
        omega_max_ = std::max(omega_max_, omega_[i]);
    }

    mu_.resize(mass_.size());
    mass_sup_ = 0.0;
    for (std::size_t i = 0; i < mass_.size(); ++i) {
        const cplx v = mass_[i];
        if (std::abs(v.imag()) > 1e-10 * (1.0 + std::abs(v.real())))
            throw std::invalid_argument("mass field must be real");
        double m = v.real();
        if (m < -1e-12) throw NumericalError("mass field has a negative nodal value");
        if (m < 0.0) m = 0.0;
        mass_[i] = cplx(m, 0.0);
        mu_[i] = std::sqrt(m);
        mass_sup_ = std::max(mass_sup_, m);
    }
}

void KleinGordonIntegrator::rotate(Field& uhat, Field& phat, double dt) const {
    for (std::size_t i = 0; i < uhat.size(); ++i) {
        const double w = omega_[i];
        const double z = w * dt;
        const double c = std::cos(z);
        const double sd = sinc(z) * dt;           // sin(w dt)/w
        const double ws = w * std::sin(z);        // w sin(w dt)
        const cplx u = uhat[i];
        const cplx p = phat[i];
        uhat[i] = c * u + sd * p;
        phat[i] = -ws * u + c * p;
    }
}

SolverState KleinGordonIntegrator::free_flow(const SolverState& state, double dt) const {
    Field uhat = forward_fft(state.u);
    Field phat = forward_fft(state.p);
    rotate(uhat, phat, dt);
    return SolverState(inverse_fft(uhat), inverse_fft(phat), state.t + dt);
}

SolverState KleinGordonIntegrator::mass_flow(const SolverState& state, double dt) const {
    Field u = state.u;
    Field p = state.p;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double m = mu_[i];
        const double z = m * dt;
        const double c = std::cos(z);
        const double sd = sinc(z) * dt;
        const double ms = m * std::sin(z);
        const cplx uv = u[i];
        const cplx pv = p[i];
        u[i] = c * uv + sd * pv;
        p[i] = -ms * uv + c * pv;
    }
    return SolverState(std::move(u), std::move(p), state.t + dt);
}

SolverState KleinGordonIntegrator::strang_step(const SolverState& state, double dt) const {
    SolverState mid = free_flow(state, 0.5 * dt);
    for (std::size_t i = 0; i < mid.p.size(); ++i)
        mid.p[i] -= dt * mass_[i].real() * mid.u[i];
    SolverState out = free_flow(mid, 0.5 * dt);
    out.t = state.t + dt;
    return out;
}

double KleinGordonIntegrator::default_dt(double T) const {
    if (!(T > 0.0)) throw ConfigError("final time must be positive");
    const double fastest = std::max(omega_max_, std::sqrt(mass_sup_));
    double dt = fastest > 0.0 ? 0.1 / fastest : T;
    dt = std::min(dt, T / 100.0);
    const long long steps = static_cast<long long>(std::ceil(T / dt - 1e-12));
    return T / static_cast<double>(steps);
}

EnergyRecord KleinGordonIntegrator::energy_spectral(double t, const Field& u_phys,
                                                    const Field& uhat, const Field& phat) const {
    const double vol = grid_->cell_volume();
    EnergyRecord rec;
    rec.t = t;
    for (std::size_t i = 0; i < phat.size(); ++i) rec.kinetic += std::norm(phat[i]);
    rec.kinetic *= vol;
    for (std::size_t i = 0; i < uhat.size(); ++i)
        rec.elastic += omega_[i] * omega_[i] * std::norm(uhat[i]);
    rec.elastic *= vol;
    for (std::size_t i = 0; i < u_phys.size(); ++i)
        rec.potential += mass_[i].real() * std::norm(u_phys[i]);
    rec.potential *= vol;
    rec.total = rec.kinetic + rec.elastic + rec.potential;
    return rec;
}

Trajectory KleinGordonIntegrator::run(const Field& u0, const Field& u1, double T, double dt,
                                      int stride,
                                      const std::function<Field(double)>* source) const {
    if (!(T > 0.0)) throw ConfigError("final time must be positive");
    if (stride < 1) throw ConfigError("snapshot stride must be positive");
    if (!u0.grid()->same_as(*grid_) || !u1.grid()->same_as(*grid_))
        throw std::invalid_argument("initial data grid mismatch");

    if (dt <= 0.0) dt = default_dt(T);
    long long steps = 0;
    check_divides(T, dt, steps);
    dt = T / static_cast<double>(steps);

    Trajectory traj;
    traj.dt = dt;
    traj.steps = static_cast<int>(steps);

    Field uhat = forward_fft(u0);
    Field phat = forward_fft(u1);
    traj.snapshots.push_back({0.0, u0, u1, energy_spectral(0.0, u0, uhat, phat)});

    for (long long j = 0; j < steps; ++j) {
        const double t = static_cast<double>(j) * dt;
        rotate(uhat, phat, 0.5 * dt);
        Field u_mid = inverse_fft(uhat);
        Field p_mid = inverse_fft(phat);
        for (std::size_t i = 0; i < p_mid.size(); ++i)
            p_mid[i] -= dt * mass_[i].real() * u_mid[i];
        if (source) {
            Field f = (*source)(t + 0.5 * dt);
            if (!f.grid()->same_as(*grid_))
                throw std::invalid_argument("source field grid mismatch");
            for (std::size_t i = 0; i < p_mid.size(); ++i) p_mid[i] += dt * f[i];
        }
        phat = forward_fft(p_mid);
        rotate(uhat, phat, 0.5 * dt);

        const bool last = j + 1 == steps;
        if (last || (j + 1) % stride == 0) {
            const double tn = last ? T : t + dt;
            Field u = inverse_fft(uhat);
            Field p = inverse_fft(phat);
            if (u.has_nan() || p.has_nan()) {
                std::ostringstream msg;
                msg << "non-finite field values at t=" << tn << " (step " << j + 1 << ")";
                throw NumericalError(msg.str());
            }
            EnergyRecord e = energy_spectral(tn, u, uhat, phat);
            traj.snapshots.push_back({tn, std::move(u), std::move(p), e});
        }
    }
    return traj;
}

Trajectory KleinGordonIntegrator::solve(const Field& u0, const Field& u1, double T, double dt,
                                        int snapshot_stride) const {
    return run(u0, u1, T, dt, snapshot_stride, nullptr);
}

Trajectory KleinGordonIntegrator::inhomogeneous_solve(const std::function<Field(double)>& source,
                                                      double T, double dt,
                                                      int snapshot_stride) const {
    return run(Field(grid_), Field(grid_), T, dt, snapshot_stride, &source);
}

Field KleinGordonIntegrator::picard_duhamel_solve(const Field& u0, const Field& u1, double T,
                                                  double dtau, double tol, int max_iter) const {
    if (!(T > 0.0)) throw ConfigError("final time must be positive");
    if (!(tol > 0.0)) throw ConfigError("picard tolerance must be positive");
    if (!u0.grid()->same_as(*grid_) || !u1.grid()->same_as(*grid_))
        throw std::invalid_argument("initial data grid mismatch");
    long long total_steps = 0;
    check_divides(T, dtau, total_steps);
    dtau = T / static_cast<double>(total_steps);

    // Contraction needs tau^2 ||m||_inf small; restart on subintervals.
    long long steps_per = total_steps;
    if (mass_sup_ > 0.0) {
        const double tau_max = std::sqrt(0.5 / mass_sup_);
        steps_per = std::max<long long>(1, static_cast<long long>(std::floor(tau_max / dtau)));
        steps_per = std::min(steps_per, total_steps);
    }

    const std::size_t M = grid_->size();
    const double vol = grid_->cell_volume();
    Field uhat = forward_fft(u0);
    Field phat = forward_fft(u1);

    long long done = 0;
    while (done < total_steps) {
        const long long n = std::min(steps_per, total_steps - done);
        const std::size_t nn = static_cast<std::size_t>(n);

        // Free part at the local time nodes j*dtau, j = 0..n.
        std::vector<Field> iter(nn + 1, Field(grid_));
        for (std::size_t j = 0; j <= nn; ++j) {
            const double t = static_cast<double>(j) * dtau;
            Field& F = iter[j];
            for (std::size_t i = 0; i < M; ++i) {
                const double w = omega_[i];
                F[i] = std::cos(w * t) * uhat[i] + sinc(w * t) * t * phat[i];
            }
        }
        const std::vector<Field> free_part = iter;

        std::vector<Field> fhat(nn + 1, Field(grid_));
        bool converged = false;
        for (int it = 0; it < max_iter && !converged; ++it) {
            bool any_source = false;
            for (std::size_t j = 0; j <= nn; ++j) {
                Field f = inverse_fft(iter[j]);
                for (std::size_t i = 0; i < M; ++i) f[i] *= -mass_[i].real();
                fhat[j] = forward_fft(f);
                for (std::size_t i = 0; i < M && !any_source; ++i)
                    if (fhat[j][i] != cplx(0.0, 0.0)) any_source = true;
            }

            double worst = 0.0;
            for (std::size_t j = 0; j <= nn; ++j) {
                Field next = free_part[j];
                if (any_source && j > 0) {
                    // sum_{l<j} w_l sin((j-l) dtau w)/w fhat_l via the
                    // Chebyshev recurrence in the lag; the l = j term
                    // vanishes with sin(0).
                    for (std::size_t i = 0; i < M; ++i) {
                        const double w = omega_[i];
                        const double theta = w * dtau;
                        const double two_cos = 2.0 * std::cos(theta);
                        double s_prev = 0.0;                  // sin(0 theta)
                        double s_cur = std::sin(theta);       // sin(1 theta)
                        cplx acc(0.0, 0.0);
                        for (std::size_t lag = 1; lag <= j; ++lag) {
                            const std::size_t l = j - lag;
                            const double kernel =
                                w > 0.0 ? s_cur / w : static_cast<double>(lag) * dtau;
                            const double wl = l == 0 ? 0.5 : 1.0;
                            acc += wl * kernel * fhat[l][i];
                            const double s_next = two_cos * s_cur - s_prev;
                            s_prev = s_cur;
                            s_cur = s_next;
                        }
                        next[i] += dtau * acc;
                    }
                }
                double diff2 = 0.0;
                for (std::size_t i = 0; i < M; ++i) diff2 += std::norm(next[i] - iter[j][i]);
                worst = std::max(worst, std::sqrt(vol * diff2));
                iter[j] = std::move(next);
            }
            converged = worst <= tol;
        }
        if (!converged)
            throw NumericalError("picard iteration did not converge within the iteration cap");

        // Velocity at the subinterval end from the differentiated formula;
        // the cos kernel keeps its endpoint terms.
        const double Ts = static_cast<double>(n) * dtau;
        Field pend(grid_);
        for (std::size_t i = 0; i < M; ++i) {
            const double w = omega_[i];
            pend[i] = -w * std::sin(w * Ts) * uhat[i] + std::cos(w * Ts) * phat[i];
        }
        for (std::size_t j = 0; j <= nn; ++j) {
            Field f = inverse_fft(iter[j]);
            for (std::size_t i = 0; i < M; ++i) f[i] *= -mass_[i].real();
            fhat[j] = forward_fft(f);
        }
        for (std::size_t l = 0; l <= nn; ++l) {
            const double wl = (l == 0 || l == nn) ? 0.5 : 1.0;
            const double tl = static_cast<double>(l) * dtau;
            for (std::size_t i = 0; i < M; ++i)
                pend[i] += dtau * wl * std::cos(omega_[i] * (Ts - tl)) * fhat[l][i];
        }

        uhat = iter[nn];
        phat = std::move(pend);
        done += n;
    }
    return inverse_fft(uhat);
}

} // namespace fkg
