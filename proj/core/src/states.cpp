#include "spinpair/states.hpp"

#include <cmath>
#include <sstream>

#include "spinpair/errors.hpp"
#include "spinpair/qmath.hpp"

namespace spinpair {

double XState::invariant_violation() const {
    double v = std::abs(a + b + c + d - 1.0);
    for (double pop : {a, b, c, d}) v = std::max(v, std::max(0.0, -pop));
    v = std::max(v, std::abs(w) - std::sqrt(std::max(0.0, a * d)));
    v = std::max(v, std::abs(z) - std::sqrt(std::max(0.0, b * c)));
    return v;
}

std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::prod00: return "prod00";
        case ScenarioKind::prod01: return "prod01";
        case ScenarioKind::prod10: return "prod10";
        case ScenarioKind::prod11: return "prod11";
        case ScenarioKind::bell_phi: return "bell-phi";
        case ScenarioKind::bell_psi: return "bell-psi";
        case ScenarioKind::raw: return "raw";
    }
    return "unknown";
}

ScenarioKind scenario_from_string(const std::string& name) {
    if (name == "prod00") return ScenarioKind::prod00;
    if (name == "prod01") return ScenarioKind::prod01;
    if (name == "prod10") return ScenarioKind::prod10;
    if (name == "prod11") return ScenarioKind::prod11;
    if (name == "bell-phi") return ScenarioKind::bell_phi;
    if (name == "bell-psi") return ScenarioKind::bell_psi;
    if (name == "raw") return ScenarioKind::raw;
    throw ConfigError("unknown scenario '" + name +
                      "' (expected prod00|prod01|prod10|prod11|bell-phi|bell-psi|raw)");
}

XState make_initial_state(const ScenarioSpec& spec) {
    if (spec.kind == ScenarioKind::raw) {
        if (!spec.raw_state) throw ConfigError("raw scenario requires a raw state");
        const XState& s = *spec.raw_state;
        require_valid_density(xstate_embed(s));
        return s;
    }
    if (!(spec.p >= 0.0 && spec.p <= 1.0))
        throw ConfigError("mixing probability p must lie in [0,1]");

    const double p = spec.p;
    const double lo = (1.0 - p) / 4.0;
    XState s{lo, lo, lo, lo, 0.0, 0.0};
    switch (spec.kind) {
        case ScenarioKind::prod00: s.a = (1.0 + 3.0 * p) / 4.0; break;
        case ScenarioKind::prod01: s.b = (1.0 + 3.0 * p) / 4.0; break;
        case ScenarioKind::prod10: s.c = (1.0 + 3.0 * p) / 4.0; break;
        case ScenarioKind::prod11: s.d = (1.0 + 3.0 * p) / 4.0; break;
        case ScenarioKind::bell_phi:
            s.a = s.d = (1.0 + p) / 4.0;
            s.w = 0.5 * p;
            break;
        case ScenarioKind::bell_psi:
            s.b = s.c = (1.0 + p) / 4.0;
            s.z = 0.5 * p;
            break;
        case ScenarioKind::raw: break;  // handled above
    }
    return s;
}

Operator4 xstate_embed(const XState& s) {
    Operator4 rho;
    rho(0, 0) = s.a;
    rho(1, 1) = s.b;
    rho(2, 2) = s.c;
    rho(3, 3) = s.d;
    rho(0, 3) = s.w;
    rho(3, 0) = std::conj(s.w);
    rho(1, 2) = s.z;
    rho(2, 1) = std::conj(s.z);
    return rho;
}

Operator4 xstate_to_matrix(const XState& s) {
    const double violation = s.invariant_violation();
    if (violation > 1e-9) {
        std::ostringstream os;
        os << "XState invariants violated by " << violation;
        throw ValidationError(os.str());
    }
    return xstate_embed(s);
}

double non_x_magnitude(const Operator4& rho) {
    double m = 0.0;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            const bool x_slot = r == c || (r == 0 && c == 3) || (r == 3 && c == 0) ||
                                (r == 1 && c == 2) || (r == 2 && c == 1);
            if (!x_slot) m = std::max(m, std::abs(rho(r, c)));
        }
    for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(rho(i, i).imag()));
    return m;
}

XState matrix_to_xstate(const Operator4& rho, double tol) {
    const double off = non_x_magnitude(rho);
    if (off > tol) {
        std::ostringstream os;
        os << "matrix is not X-form: off-pattern magnitude " << off << " exceeds " << tol;
        throw ValidationError(os.str());
    }
    XState s;
    s.a = rho(0, 0).real();
    s.b = rho(1, 1).real();
    s.c = rho(2, 2).real();
    s.d = rho(3, 3).real();
    s.w = 0.5 * (rho(0, 3) + std::conj(rho(3, 0)));
    s.z = 0.5 * (rho(1, 2) + std::conj(rho(2, 1)));
    return s;
}

}  // namespace spinpair
