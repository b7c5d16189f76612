#pragma once

#include <string>
#include <vector>

#include "spinpair/matrix.hpp"
#include "spinpair/model.hpp"
#include "spinpair/states.hpp"

namespace spinpair {

/// Interchangeable evolution engines. CLI names: spectral|xclosed|kraus|ode.
enum class Engine { spectral, xclosed, kraus, ode };

std::string to_string(Engine e);
Engine engine_from_string(const std::string& name);

/// Exact evolution in the Hamiltonian eigenbasis:
///   rho(t) = sum_mn exp[-(gamma t/2)(Em-En)^2 - i(Em-En)t] <m|rho0|n> |m><n|.
/// Throws ValidationError if rho0 is not a valid density matrix.
Operator4 evolve_spectral(const Operator4& rho0, const ModelParams& p, double t);

/// Closed-form evolution of an X-state. The dynamics acts independently on
/// the outer (|00>,|11>) and inner (|01>,|10>) two-level sectors; each sector
/// precesses about its effective field at frequency 2*mu resp. 2*eta while
/// the transverse part damps as exp(-2 gamma mu^2 t) resp. exp(-2 gamma
/// eta^2 t). Refuses parameter sets with eta ~ 0, mu ~ 0 or eta^2 ~ lambda^2
/// (SingularParameterError; use the spectral engine there).
XState evolve_xstate_closed(const XState& s0, const ModelParams& p, double t);

/// Truncated operator-sum evolution,
///   rho(t) = sum_{l=0}^{L} M_l rho0 M_l^dagger,
///   M_l = (gamma t)^{l/2}/sqrt(l!) H^l exp(-iHt) exp(-gamma t H^2 / 2),
/// evaluated in the energy eigenbasis with log-space factorials. L is chosen
/// so the exponential-series remainder bound at gamma*t*max|Em*En| is below
/// `tol`; TruncationError if that needs more than 10000 terms.
Operator4 evolve_kraus(const Operator4& rho0, const ModelParams& p, double t, double tol);

struct Trajectory {
    ModelParams params;
    ScenarioSpec scenario;
    std::vector<double> times;
    std::vector<Operator4> states;
    Engine method = Engine::spectral;
};

/// Fixed-step RK4 integration of
///   drho/dt = -i[H,rho] - (gamma/2)[H,[H,rho]],
/// re-Hermitizing after every step. Serves as the independent oracle for the
/// closed-form engines. States are recorded every `sample_dt` (every
/// integration step when sample_dt <= 0). Throws StabilityError when the
/// trace drifts by more than 1e-6.
Trajectory evolve_ode(const Operator4& rho0, const ModelParams& p, double t_max, double dt,
                      double sample_dt = 0.0);

/// t -> infinity limit: every exponentially damped sector term dropped.
/// Independent of gamma. Requires gamma > 0 and both sector splittings
/// nonzero; otherwise SingularParameterError naming the undamped sector.
XState steady_state(const XState& s0, const ModelParams& p);

}  // namespace spinpair
