#include "spinpair/evolve.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "spinpair/errors.hpp"
#include "spinpair/qmath.hpp"

namespace spinpair {

std::string to_string(Engine e) {
    switch (e) {
        case Engine::spectral: return "spectral";
        case Engine::xclosed: return "xclosed";
        case Engine::kraus: return "kraus";
        case Engine::ode: return "ode";
    }
    return "unknown";
}

Engine engine_from_string(const std::string& name) {
    if (name == "spectral") return Engine::spectral;
    if (name == "xclosed") return Engine::xclosed;
    if (name == "kraus") return Engine::kraus;
    if (name == "ode") return Engine::ode;
    throw ConfigError("unknown engine '" + name + "' (expected spectral|xclosed|kraus|ode)");
}

Operator4 evolve_spectral(const Operator4& rho0, const ModelParams& p, double t) {
    require_valid_density(rho0);
    if (t == 0.0) return rho0;

    const SpectralData sd = analytic_spectrum(p);

    // G = V^dagger rho0 V, kernel applied entrywise, back to the lab basis.
    Matrix4 g;
    for (std::size_t m = 0; m < 4; ++m)
        for (std::size_t n = 0; n < 4; ++n) {
            cplx s = 0.0;
            for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t c = 0; c < 4; ++c)
                    s += std::conj(sd.vectors(r, m)) * rho0(r, c) * sd.vectors(c, n);
            g(m, n) = s;
        }

    for (std::size_t m = 0; m < 4; ++m)
        for (std::size_t n = 0; n < 4; ++n) {
            const double gap = sd.energies[m] - sd.energies[n];
            const double damp = std::exp(-0.5 * p.gamma * t * gap * gap);
            g(m, n) *= damp * std::polar(1.0, -gap * t);
        }

    Operator4 rho;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            cplx s = 0.0;
            for (std::size_t m = 0; m < 4; ++m)
                for (std::size_t n = 0; n < 4; ++n)
                    s += sd.vectors(r, m) * g(m, n) * std::conj(sd.vectors(c, n));
            rho(r, c) = s;
        }
    return rho;
}

namespace {

// One two-level sector of an X-state: populations (hi, lo) and the upper
// coherence q, evolving under h.sigma (plus a sector-constant identity part
// that drops out of both commutators).
struct Sector {
    double hi, lo;
    cplx q;
};

// `omega` is |h|, passed in so both engines share the exact same splitting.
Sector evolve_sector(const Sector& s0, const Vec3& h, double omega, double gamma, double t,
                     bool drop_damped) {
    const double sum = s0.hi + s0.lo;
    const Vec3 r0 = {2.0 * s0.q.real(), -2.0 * s0.q.imag(), s0.hi - s0.lo};

    Vec3 r;
    if (omega == 0.0) {
        r = r0;  // sector Hamiltonian proportional to identity: frozen
    } else {
        const Vec3 axis = scaled(h, 1.0 / omega);
        const Vec3 par = scaled(axis, dot(r0, axis));
        if (drop_damped) {
            r = par;
        } else {
            const Vec3 perp = sub3(r0, par);
            const double damp = std::exp(-2.0 * gamma * omega * omega * t);
            const double co = std::cos(2.0 * omega * t);
            const double si = std::sin(2.0 * omega * t);
            const Vec3 rot = cross(axis, r0);
            r = add3(par, scaled(add3(scaled(perp, co), scaled(rot, si)), damp));
        }
    }

    Sector out;
    out.hi = 0.5 * (sum + r[2]);
    out.lo = 0.5 * (sum - r[2]);
    out.q = 0.5 * cplx(r[0], -r[1]);
    return out;
}

void require_regular_sectors(const ModelParams& p, const SpectralData& sd) {
    const double q_inner = p.dm * p.dm + p.j_plus * p.j_plus;  // = eta^2 - lambda^2
    if (sd.eta < kDegenerateThreshold || sd.mu < kDegenerateThreshold ||
        q_inner < kDegenerateThreshold) {
        std::ostringstream os;
        os << "closed X-state formulas are singular here (eta=" << sd.eta << ", mu=" << sd.mu
           << ", eta^2-lambda^2=" << q_inner << "); use the spectral engine";
        throw SingularParameterError(os.str());
    }
}

}  // namespace

XState evolve_xstate_closed(const XState& s0, const ModelParams& p, double t) {
    p.validate();
    if (!s0.valid(1e-9)) throw ValidationError("invalid X-state input");
    const SpectralData sd = analytic_spectrum(p);
    require_regular_sectors(p, sd);

    const Vec3 h_outer = {p.j_minus, 0.0, p.field};
    const Vec3 h_inner = {p.j_plus, -p.dm, p.inhomogeneity};

    const Sector outer = evolve_sector({s0.a, s0.d, s0.w}, h_outer, sd.mu, p.gamma, t, false);
    const Sector inner = evolve_sector({s0.b, s0.c, s0.z}, h_inner, sd.eta, p.gamma, t, false);

    return XState{outer.hi, inner.hi, inner.lo, outer.lo, outer.q, inner.q};
}

XState steady_state(const XState& s0, const ModelParams& p) {
    p.validate();
    if (!s0.valid(1e-9)) throw ValidationError("invalid X-state input");
    if (p.gamma <= 0.0)
        throw SingularParameterError("no steady state for gamma = 0 (undamped evolution)");
    const SpectralData sd = analytic_spectrum(p);
    if (sd.mu < kDegenerateThreshold)
        throw SingularParameterError("outer sector undamped: mu = 0");
    if (sd.eta < kDegenerateThreshold)
        throw SingularParameterError("inner sector undamped: eta = 0");

    const Vec3 h_outer = {p.j_minus, 0.0, p.field};
    const Vec3 h_inner = {p.j_plus, -p.dm, p.inhomogeneity};

    const Sector outer = evolve_sector({s0.a, s0.d, s0.w}, h_outer, sd.mu, p.gamma, 0.0, true);
    const Sector inner = evolve_sector({s0.b, s0.c, s0.z}, h_inner, sd.eta, p.gamma, 0.0, true);

    return XState{outer.hi, inner.hi, inner.lo, outer.lo, outer.q, inner.q};
}

namespace {

// Smallest truncation order whose remainder bound for sum_l A^l/l! is below
// tol: A^{L+1}/(L+1)! * (L+2)/(L+2-A) evaluated in log space.
int kraus_order(double a, double tol) {
    if (a <= 0.0) return 0;
    const double log_a = std::log(a);
    const double log_tol = std::log(tol);
    double achieved = std::numeric_limits<double>::infinity();
    for (int l = 0; l <= 10000; ++l) {
        if (l + 2 <= a) continue;  // geometric bound not yet valid
        const double log_rem = (l + 1) * log_a - std::lgamma(l + 2.0) +
                               std::log((l + 2.0) / (l + 2.0 - a));
        if (log_rem < log_tol) return l;
        achieved = log_rem;
    }
    std::ostringstream os;
    os << "operator-sum truncation cannot reach tol=" << tol << " within 10000 terms (argument "
       << a << ", achieved remainder bound "
       << (std::isfinite(achieved) ? std::exp(achieved) : achieved) << ")";
    throw TruncationError(os.str());
}

}  // namespace

Operator4 evolve_kraus(const Operator4& rho0, const ModelParams& p, double t, double tol) {
    require_valid_density(rho0);
    if (tol <= 0.0) throw ConfigError("kraus tolerance must be positive");
    if (t == 0.0) return rho0;

    const SpectralData sd = analytic_spectrum(p);

    double e_max = 0.0;
    for (double e : sd.energies) e_max = std::max(e_max, std::abs(e));
    const double arg_max = p.gamma * t * e_max * e_max;
    const int order = kraus_order(arg_max, tol);

    std::vector<double> log_fact(order + 1, 0.0);
    for (int l = 1; l <= order; ++l) log_fact[l] = log_fact[l - 1] + std::log(double(l));

    Matrix4 g;
    for (std::size_t m = 0; m < 4; ++m)
        for (std::size_t n = 0; n < 4; ++n) {
            cplx s = 0.0;
            for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t c = 0; c < 4; ++c)
                    s += std::conj(sd.vectors(r, m)) * rho0(r, c) * sd.vectors(c, n);
            g(m, n) = s;
        }

    // Each term l contributes (gamma t Em En)^l / l! times the common damping
    // exp(-gamma t (Em^2+En^2)/2); every term is <= 1 in magnitude, so the
    // log-space sum cannot overflow for any parameter scale.
    for (std::size_t m = 0; m < 4; ++m)
        for (std::size_t n = 0; n < 4; ++n) {
            const double x = p.gamma * t * sd.energies[m] * sd.energies[n];
            const double damp_log =
                -0.5 * p.gamma * t *
                (sd.energies[m] * sd.energies[m] + sd.energies[n] * sd.energies[n]);
            double series = 0.0;
            if (x == 0.0) {
                series = std::exp(damp_log);
            } else {
                const double log_ax = std::log(std::abs(x));
                double sign = 1.0;
                for (int l = 0; l <= order; ++l) {
                    series += sign * std::exp(l * log_ax - log_fact[l] + damp_log);
                    if (x < 0.0) sign = -sign;
                }
            }
            const double gap = sd.energies[m] - sd.energies[n];
            g(m, n) *= series * std::polar(1.0, -gap * t);
        }

    Operator4 rho;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            cplx s = 0.0;
            for (std::size_t m = 0; m < 4; ++m)
                for (std::size_t n = 0; n < 4; ++n)
                    s += sd.vectors(r, m) * g(m, n) * std::conj(sd.vectors(c, n));
            rho(r, c) = s;
        }
    return rho;
}

namespace {

Operator4 master_rhs(const Operator4& h, const Operator4& rho, double gamma) {
    const Operator4 k1 = h * rho - rho * h;
    const Operator4 k2 = h * k1 - k1 * h;
    return cplx(0.0, -1.0) * k1 - cplx(0.5 * gamma, 0.0) * k2;
}

Operator4 rk4_step(const Operator4& h, const Operator4& rho, double gamma, double dt) {
    const Operator4 k1 = master_rhs(h, rho, gamma);
    const Operator4 k2 = master_rhs(h, rho + cplx(0.5 * dt) * k1, gamma);
    const Operator4 k3 = master_rhs(h, rho + cplx(0.5 * dt) * k2, gamma);
    const Operator4 k4 = master_rhs(h, rho + cplx(dt) * k3, gamma);
    Operator4 next = rho + cplx(dt / 6.0) * (k1 + cplx(2.0) * k2 + cplx(2.0) * k3 + k4);
    // re-Hermitize
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = r; c < 4; ++c) {
            const cplx v = 0.5 * (next(r, c) + std::conj(next(c, r)));
            next(r, c) = v;
            next(c, r) = std::conj(v);
        }
    return next;
}

}  // namespace

Trajectory evolve_ode(const Operator4& rho0, const ModelParams& p, double t_max, double dt,
                      double sample_dt) {
    require_valid_density(rho0);
    if (dt <= 0.0) throw ConfigError("ode step dt must be positive");
    if (t_max < 0.0) throw ConfigError("t_max must be non-negative");
    if (sample_dt <= 0.0) sample_dt = dt;

    const Operator4 h = build_hamiltonian(p);

    Trajectory traj;
    traj.params = p;
    traj.method = Engine::ode;

    Operator4 rho = rho0;
    double t = 0.0;
    traj.times.push_back(0.0);
    traj.states.push_back(rho);

    const std::size_t n_samples = static_cast<std::size_t>(std::floor(t_max / sample_dt + 1e-9));
    for (std::size_t k = 1; k <= n_samples; ++k) {
        const double target = k * sample_dt;
        while (t < target - 1e-12) {
            const double step = std::min(dt, target - t);
            rho = rk4_step(h, rho, p.gamma, step);
            t += step;
            const double drift = std::abs(rho.trace() - cplx(1.0));
            if (drift > 1e-6) {
                std::ostringstream os;
                os << "trace drift " << drift << " at t=" << t
                   << "; integration step too large, reduce dt";
                throw StabilityError(os.str());
            }
        }
        t = target;
        traj.times.push_back(target);
        traj.states.push_back(rho);
    }
    return traj;
}

}  // namespace spinpair
