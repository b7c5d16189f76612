#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spinpair/analysis.hpp"
#include "spinpair/errors.hpp"
#include "spinpair/evolve.hpp"
#include "spinpair/measures.hpp"
#include "spinpair/qmath.hpp"
#include "support.hpp"

using namespace spinpair;

namespace {

ModelParams reference_params(double gamma = 0.05) {
    ModelParams p;
    p.j_plus = 1.0;
    p.j_minus = 0.5;
    p.j_z = 1.0;
    p.inhomogeneity = 0.5;
    p.dm = 1.0;
    p.field = 1.0;
    p.gamma = gamma;
    return p;
}

const std::array<ScenarioKind, 6> kNamedScenarios = {
    ScenarioKind::prod00, ScenarioKind::prod01,   ScenarioKind::prod10,
    ScenarioKind::prod11, ScenarioKind::bell_phi, ScenarioKind::bell_psi};

Operator4 unitary_reference(const ModelParams& p, const Operator4& rho0, double t) {
    // exp(-iHt) rho exp(iHt) built from an independent eigendecomposition
    ModelParams q = p;
    q.gamma = 0.0;
    const Operator4 h = build_hamiltonian(q);
    const auto es = hermitian_eigendecompose(h);
    Matrix4 u;
    for (std::size_t k = 0; k < 4; ++k) {
        const auto v = es.eigenvector(k);
        u += std::polar(1.0, -es.eigenvalues[k] * t) * outer(v, v);
    }
    return u * rho0 * u.adjoint();
}

}  // namespace

TEST_CASE("spectral engine returns the initial state at t=0") {
    const Operator4 rho0 = testsup::bell_phi_plus();
    CHECK(max_abs_diff(evolve_spectral(rho0, reference_params(), 0.0), rho0) == 0.0);
}

TEST_CASE("spectral engine at gamma=0 is the unitary evolution") {
    const ModelParams p = reference_params(0.0);
    for (int trial = 0; trial < 10; ++trial) {
        const Operator4 rho0 = xstate_to_matrix(testsup::random_xstate());
        const double t = testsup::uniform(0.1, 8.0);
        const Operator4 rho_t = evolve_spectral(rho0, p, t);
        CHECK(max_abs_diff(rho_t, unitary_reference(p, rho0, t)) < 1e-12);
        CHECK(purity(rho_t) == doctest::Approx(purity(rho0)).epsilon(1e-12));
    }
}

TEST_CASE("outer coherence of the Bell state hits its first trough on schedule") {
    // r14(t) = 0.1 + 0.4 exp(-2.5 gamma t)(cos 2 mu t - i mu sin 2 mu t);
    // at t = pi/(2 mu) the cosine is -1 and the sine vanishes.
    const ModelParams p = reference_params(0.05);
    const double mu = std::sqrt(1.25);
    const double t = M_PI / (2.0 * mu);
    const double expected = 0.1 - 0.4 * std::exp(-2.5 * p.gamma * t);  // ~ -0.2355746

    const Operator4 rho_t = evolve_spectral(testsup::bell_phi_plus(), p, t);
    CHECK(rho_t(0, 3).real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(rho_t(0, 3).imag()) < 1e-12);
    CHECK(expected == doctest::Approx(-0.23557).epsilon(1e-4));
}

TEST_CASE("closed X-state engine") {
    const ModelParams p = reference_params(0.05);

    SUBCASE("t=0 returns the input within 1e-14") {
        for (int trial = 0; trial < 20; ++trial) {
            const XState s0 = testsup::random_xstate();
            const XState s = evolve_xstate_closed(s0, p, 0.0);
            CHECK(std::abs(s.a - s0.a) < 1e-14);
            CHECK(std::abs(s.b - s0.b) < 1e-14);
            CHECK(std::abs(s.c - s0.c) < 1e-14);
            CHECK(std::abs(s.d - s0.d) < 1e-14);
            CHECK(std::abs(s.w - s0.w) < 1e-14);
            CHECK(std::abs(s.z - s0.z) < 1e-14);
        }
    }

    SUBCASE("bell-psi keeps the outer block exactly empty") {
        const XState s0 = make_initial_state({ScenarioKind::bell_psi, 1.0, {}});
        for (double t : {0.3, 1.7, 6.4, 19.0}) {
            const XState s = evolve_xstate_closed(s0, p, t);
            CHECK(s.a == 0.0);
            CHECK(s.d == 0.0);
            CHECK(std::abs(s.w) == 0.0);
        }
    }

    SUBCASE("prod00 population follows its closed form") {
        // r11(t) = (2.25 + 0.25 exp(-2.5 gamma t) cos 2 mu t) / 2.5
        const XState s0 = make_initial_state({ScenarioKind::prod00, 1.0, {}});
        const double mu = std::sqrt(1.25);
        for (double t : {0.0, 0.7, 2.9, 11.3}) {
            const double expected =
                (2.25 + std::exp(-2.5 * p.gamma * t) * 0.25 * std::cos(2.0 * mu * t)) / 2.5;
            const XState s = evolve_xstate_closed(s0, p, t);
            CHECK(s.a == doctest::Approx(expected).epsilon(1e-13));
        }
    }

    SUBCASE("matches the spectral engine on random X-states") {
        for (int trial = 0; trial < 40; ++trial) {
            const XState s0 = testsup::random_xstate();
            const double t = testsup::uniform(0.0, 20.0);
            const Operator4 via_closed = xstate_to_matrix(evolve_xstate_closed(s0, p, t));
            const Operator4 via_spectral = evolve_spectral(xstate_to_matrix(s0), p, t);
            CHECK(max_abs_diff(via_closed, via_spectral) < 1e-10);
        }
    }

    SUBCASE("agreement survives coupling scales far from unity") {
        for (double scale : {0.01, 1.0, 50.0}) {
            ModelParams q = p;
            q.j_plus *= scale;
            q.j_minus *= scale;
            q.j_z *= scale;
            q.dm *= scale;
            q.field *= scale;
            q.inhomogeneity *= scale;
            for (int trial = 0; trial < 10; ++trial) {
                const XState s0 = testsup::random_xstate();
                const double t = testsup::uniform(0.0, 20.0);
                const Operator4 via_closed = xstate_to_matrix(evolve_xstate_closed(s0, q, t));
                const Operator4 via_spectral = evolve_spectral(xstate_to_matrix(s0), q, t);
                CHECK(max_abs_diff(via_closed, via_spectral) < 1e-10);
            }
        }
    }

    SUBCASE("refuses singular parameter sets and names the cure") {
        ModelParams sing = p;
        sing.dm = 0.0;
        sing.j_plus = 0.0;  // eta^2 = lambda^2
        const XState s0 = make_initial_state({ScenarioKind::bell_phi, 1.0, {}});
        CHECK_THROWS_WITH_AS(evolve_xstate_closed(s0, sing, 1.0),
                             doctest::Contains("spectral"), SingularParameterError);
    }
}

TEST_CASE("operator-sum engine") {
    const ModelParams p = reference_params(0.05);
    const Operator4 rho0 = testsup::bell_phi_plus();

    SUBCASE("t=0 returns the input") {
        CHECK(max_abs_diff(evolve_kraus(rho0, p, 0.0, 1e-10), rho0) == 0.0);
    }

    SUBCASE("gamma=0 reduces to the single unitary term") {
        const ModelParams q = reference_params(0.0);
        for (double t : {0.5, 2.0, 7.7}) {
            CHECK(max_abs_diff(evolve_kraus(rho0, q, t, 1e-10), unitary_reference(q, rho0, t)) <
                  1e-12);
        }
    }

    SUBCASE("sums to the spectral kernel") {
        for (ScenarioKind kind : kNamedScenarios) {
            const Operator4 r0 = xstate_to_matrix(make_initial_state({kind, 0.6, {}}));
            for (double t : {1.0, 5.0, 20.0}) {
                CHECK(max_abs_diff(evolve_kraus(r0, p, t, 1e-10), evolve_spectral(r0, p, t)) <
                      1e-8);
            }
        }
    }

    SUBCASE("unreachable tolerance reports truncation") {
        ModelParams big = p;
        big.gamma = 50.0;
        CHECK_THROWS_AS(evolve_kraus(rho0, big, 4000.0, 1e-10), TruncationError);
    }
}

TEST_CASE("fixed-step integrator") {
    const ModelParams p = reference_params(0.05);
    const Operator4 rho0 = xstate_to_matrix(make_initial_state({ScenarioKind::bell_phi, 1.0, {}}));

    SUBCASE("unitary limit matches the spectral engine to integrator accuracy") {
        const ModelParams q = reference_params(0.0);
        const Trajectory traj = evolve_ode(rho0, q, 1.0, 1e-3, 0.5);
        const Operator4& final = traj.states.back();
        CHECK(max_abs_diff(final, evolve_spectral(rho0, q, 1.0)) < 1e-10);
    }

    SUBCASE("tracks the spectral solution over a long window") {
        const Trajectory traj = evolve_ode(rho0, p, 10.0, 1e-3, 0.5);
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            CHECK(max_abs_diff(traj.states[k], evolve_spectral(rho0, p, traj.times[k])) < 1e-6);
        }
    }

    SUBCASE("trace is conserved at every sample") {
        const Trajectory traj = evolve_ode(rho0, p, 5.0, 1e-3, 0.25);
        for (const auto& rho : traj.states) CHECK(std::abs(rho.trace() - cplx(1.0)) < 1e-10);
    }

    SUBCASE("oversized steps raise a stability error") {
        ModelParams stiff = p;
        stiff.gamma = 40.0;
        CHECK_THROWS_AS(evolve_ode(rho0, stiff, 10.0, 0.5), StabilityError);
    }
}

TEST_CASE("steady state") {
    const ModelParams p = reference_params(0.05);

    SUBCASE("bell-phi p=1 reference values") {
        const XState s0 = make_initial_state({ScenarioKind::bell_phi, 1.0, {}});
        const XState inf = steady_state(s0, p);
        CHECK(inf.a == doctest::Approx(0.7).epsilon(1e-13));
        CHECK(inf.d == doctest::Approx(0.3).epsilon(1e-13));
        CHECK(inf.b == 0.0);
        CHECK(inf.c == 0.0);
        CHECK(inf.w.real() == doctest::Approx(0.1).epsilon(1e-13));
        CHECK(std::abs(inf.w.imag()) < 1e-15);
        CHECK(std::abs(inf.z) == 0.0);
    }

    SUBCASE("prod00 p=1 with dm=3: outer coherence unaffected by dm") {
        ModelParams q = p;
        q.dm = 3.0;
        const XState s0 = make_initial_state({ScenarioKind::prod00, 1.0, {}});
        const XState inf = steady_state(s0, q);
        CHECK(inf.w.real() == doctest::Approx(0.2).epsilon(1e-13));
        CHECK(std::abs(inf.w.imag()) < 1e-15);
    }

    SUBCASE("independent of gamma") {
        const XState s0 = make_initial_state({ScenarioKind::bell_psi, 0.6, {}});
        ModelParams a = p, b = p;
        a.gamma = 0.05;
        b.gamma = 0.3;
        const XState sa = steady_state(s0, a);
        const XState sb = steady_state(s0, b);
        CHECK(std::abs(sa.a - sb.a) <= 1e-12);
        CHECK(std::abs(sa.b - sb.b) <= 1e-12);
        CHECK(std::abs(sa.w - sb.w) <= 1e-12);
        CHECK(std::abs(sa.z - sb.z) <= 1e-12);
    }

    SUBCASE("gamma=0 has no steady state") {
        const XState s0 = make_initial_state({ScenarioKind::bell_phi, 1.0, {}});
        CHECK_THROWS_AS(steady_state(s0, reference_params(0.0)), SingularParameterError);
    }

    SUBCASE("undamped sector is named") {
        ModelParams q = p;
        q.j_minus = 0.0;
        q.field = 0.0;  // mu = 0
        const XState s0 = make_initial_state({ScenarioKind::bell_phi, 1.0, {}});
        CHECK_THROWS_WITH_AS(steady_state(s0, q), doctest::Contains("mu"),
                             SingularParameterError);
    }
}

TEST_CASE("undamped evolution is exactly periodic in the active sector") {
    // bell-psi p=1 lives in the inner sector only; one full precession takes
    // pi/eta, after which state and measures recur (no decay at gamma=0).
    const ModelParams p = reference_params(0.0);
    const double period = M_PI / 1.5;
    const XState s0 = make_initial_state({ScenarioKind::bell_psi, 1.0, {}});
    for (double t : {0.3, 1.1, 2.6}) {
        const XState a = evolve_xstate_closed(s0, p, t);
        const XState b = evolve_xstate_closed(s0, p, t + period);
        const XState c = evolve_xstate_closed(s0, p, t + 5.0 * period);
        CHECK(std::abs(a.z - b.z) < 1e-10);
        CHECK(std::abs(a.b - b.b) < 1e-10);
        CHECK(std::abs(a.z - c.z) < 1e-10);
        const auto sa = correlations_at(t, a);
        const auto sb = correlations_at(t, b);
        CHECK(std::abs(sa.concurrence - sb.concurrence) < 1e-10);
        CHECK(std::abs(sa.min_hs - sb.min_hs) < 1e-10);
        CHECK(std::abs(sa.min_trace - sb.min_trace) < 1e-10);
        CHECK(std::abs(sa.purity - 1.0) < 1e-12);
    }
}

TEST_CASE("long-time evolution converges to the steady state") {
    const ModelParams p = reference_params(0.05);
    const double mu2 = 1.25;
    const double t_late = 20.0 / (2.0 * p.gamma * mu2);  // slowest sector
    for (ScenarioKind kind : {ScenarioKind::bell_phi, ScenarioKind::prod00}) {
        const XState s0 = make_initial_state({kind, 1.0, {}});
        const Operator4 late = evolve_spectral(xstate_to_matrix(s0), p, t_late);
        const Operator4 inf = xstate_to_matrix(steady_state(s0, p));
        CHECK(max_abs_diff(late, inf) < 1e-6);
    }
}

TEST_CASE("every engine preserves the X form") {
    const ModelParams p = reference_params(0.1);
    for (ScenarioKind kind : kNamedScenarios) {
        const XState s0 = make_initial_state({kind, 0.6, {}});
        const Operator4 rho0 = xstate_to_matrix(s0);
        for (double t : {0.9, 4.2, 13.5}) {
            CHECK(non_x_magnitude(evolve_spectral(rho0, p, t)) <= 1e-12);
            CHECK(non_x_magnitude(evolve_kraus(rho0, p, t, 1e-10)) <= 1e-12);
        }
        const Trajectory traj = evolve_ode(rho0, p, 5.0, 1e-3, 1.0);
        for (const auto& rho : traj.states) CHECK(non_x_magnitude(rho) <= 1e-12);
    }
}

TEST_CASE("purity never increases under damping") {
    const ModelParams p = reference_params(0.1);
    for (ScenarioKind kind : kNamedScenarios) {
        const Operator4 rho0 = xstate_to_matrix(make_initial_state({kind, 1.0, {}}));
        double last = purity(rho0);
        for (int k = 1; k <= 200; ++k) {
            const double now = purity(evolve_spectral(rho0, p, 0.1 * k));
            CHECK(now <= last + 1e-10);
            last = now;
        }
    }
}

TEST_CASE("coherence deviation peaks decay at the sector rate") {
    const ModelParams p = reference_params(0.05);
    const XState s0 = make_initial_state({ScenarioKind::bell_phi, 1.0, {}});
    const XState inf = steady_state(s0, p);

    const double dt = 0.02;
    std::vector<double> times, dev;
    for (int k = 0; k * dt <= 60.0; ++k) {
        const double t = k * dt;
        const XState s = evolve_xstate_closed(s0, p, t);
        times.push_back(t);
        dev.push_back(std::abs(s.w - inf.w));
    }
    const auto fit = fit_envelope_rate(find_peaks(times, dev));
    REQUIRE(fit.has_value());
    const double expected = 2.0 * p.gamma * 1.25;  // 2 gamma mu^2
    CHECK(std::abs(fit->rate - expected) / expected < 0.02);
}

TEST_CASE("trajectory sample states validate") {
    const ModelParams p = reference_params(0.05);
    const Operator4 rho0 = xstate_to_matrix(make_initial_state({ScenarioKind::bell_psi, 0.6, {}}));
    const Trajectory traj = evolve_ode(rho0, p, 4.0, 1e-3, 0.5);
    REQUIRE(traj.times.size() == traj.states.size());
    for (std::size_t k = 1; k < traj.times.size(); ++k) CHECK(traj.times[k] > traj.times[k - 1]);
    for (const auto& rho : traj.states) CHECK(validate_density(rho, 1e-8).ok());
}
