#pragma once

#include <complex>
#include <optional>
#include <string>

#include "spinpair/matrix.hpp"

namespace spinpair {

/// X-form density matrix: populations a..d on the diagonal, w at (1,4)
/// (conjugate at (4,1)), z at (2,3) (conjugate at (3,2)), zeros elsewhere.
/// Valid when a+b+c+d = 1, populations are non-negative, |w| <= sqrt(ad)
/// and |z| <= sqrt(bc) (block positivity).
struct XState {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    cplx w{};
    cplx z{};

    /// Largest invariant violation (0 when exactly valid).
    double invariant_violation() const;
    bool valid(double tol = 1e-12) const { return invariant_violation() <= tol; }
};

enum class ScenarioKind { prod00, prod01, prod10, prod11, bell_phi, bell_psi, raw };

/// Named initial-state family: p-weighted mixture of a pure state with the
/// maximally mixed state, p |Phi><Phi| + (1-p) I/4, or a raw X-state.
struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::bell_phi;
    double p = 1.0;
    std::optional<XState> raw_state;
};

/// CLI/config names: prod00|prod01|prod10|prod11|bell-phi|bell-psi|raw.
std::string to_string(ScenarioKind kind);
ScenarioKind scenario_from_string(const std::string& name);

/// Construct the scenario's initial X-state.
///   bell_phi: a=d=(1+p)/4, b=c=(1-p)/4, w=p/2, z=0
///   bell_psi: b=c=(1+p)/4, a=d=(1-p)/4, z=p/2, w=0
///   prodXY:   population (1+3p)/4 on the |XY> slot, (1-p)/4 elsewhere
/// Throws ConfigError for p outside [0,1], ValidationError for an invalid
/// raw state.
XState make_initial_state(const ScenarioSpec& spec);

/// Embed into the 4x4 basis without any validity check (for diagnostics).
Operator4 xstate_embed(const XState& s);

/// Embed into the 4x4 basis. Throws ValidationError when the XState
/// invariants are violated beyond 1e-9.
Operator4 xstate_to_matrix(const XState& s);

/// Extract X-form components; throws ValidationError when any entry outside
/// the X pattern exceeds `tol`.
XState matrix_to_xstate(const Operator4& rho, double tol = 1e-10);

/// Largest matrix entry outside the X pattern.
double non_x_magnitude(const Operator4& rho);

}  // namespace spinpair
