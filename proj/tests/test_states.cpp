#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spinpair/errors.hpp"
#include "spinpair/measures.hpp"
#include "spinpair/qmath.hpp"
#include "spinpair/states.hpp"
#include "support.hpp"

using namespace spinpair;

TEST_CASE("scenario names round-trip") {
    for (ScenarioKind kind : {ScenarioKind::prod00, ScenarioKind::prod01, ScenarioKind::prod10,
                              ScenarioKind::prod11, ScenarioKind::bell_phi, ScenarioKind::bell_psi,
                              ScenarioKind::raw})
        CHECK(scenario_from_string(to_string(kind)) == kind);
    CHECK_THROWS_AS(scenario_from_string("bellphi"), ConfigError);
}

TEST_CASE("pure Bell mixtures") {
    SUBCASE("bell-phi at p=1 is the Bell projector") {
        const XState s = make_initial_state({ScenarioKind::bell_phi, 1.0, {}});
        CHECK(s.a == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(s.d == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(s.b == 0.0);
        CHECK(s.c == 0.0);
        CHECK(s.w.real() == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(std::abs(s.z) == 0.0);
        CHECK(max_abs_diff(xstate_to_matrix(s), testsup::bell_phi_plus()) < 1e-15);
    }
    SUBCASE("bell-psi at p=0.6") {
        const XState s = make_initial_state({ScenarioKind::bell_psi, 0.6, {}});
        CHECK(s.b == doctest::Approx(0.4).epsilon(1e-15));
        CHECK(s.c == doctest::Approx(0.4).epsilon(1e-15));
        CHECK(s.a == doctest::Approx(0.1).epsilon(1e-15));
        CHECK(s.d == doctest::Approx(0.1).epsilon(1e-15));
        CHECK(s.z.real() == doctest::Approx(0.3).epsilon(1e-15));
        CHECK(std::abs(s.w) == 0.0);
    }
}

TEST_CASE("product-state mixtures put the enlarged population on the right slot") {
    const XState s00 = make_initial_state({ScenarioKind::prod00, 1.0, {}});
    CHECK(s00.a == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s00.b + s00.c + s00.d == 0.0);

    const XState s01 = make_initial_state({ScenarioKind::prod01, 0.6, {}});
    CHECK(s01.b == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(s01.a == doctest::Approx(0.1).epsilon(1e-15));

    const XState s10 = make_initial_state({ScenarioKind::prod10, 0.6, {}});
    CHECK(s10.c == doctest::Approx(0.7).epsilon(1e-15));

    const XState s11 = make_initial_state({ScenarioKind::prod11, 0.6, {}});
    CHECK(s11.d == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("every kind reduces to the maximal mixture at p=0 and a projector at p=1") {
    for (ScenarioKind kind : {ScenarioKind::prod00, ScenarioKind::prod01, ScenarioKind::prod10,
                              ScenarioKind::prod11, ScenarioKind::bell_phi,
                              ScenarioKind::bell_psi}) {
        const XState mixed = make_initial_state({kind, 0.0, {}});
        CHECK(max_abs_diff(xstate_to_matrix(mixed), cplx(0.25) * Operator4::identity()) < 1e-15);

        const XState pure = make_initial_state({kind, 1.0, {}});
        CHECK(purity(xstate_to_matrix(pure)) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("constructed states have exactly unit trace and pass validation") {
    for (ScenarioKind kind : {ScenarioKind::prod00, ScenarioKind::prod01, ScenarioKind::prod10,
                              ScenarioKind::prod11, ScenarioKind::bell_phi,
                              ScenarioKind::bell_psi}) {
        for (double p : {0.0, 0.3, 0.6, 1.0}) {
            const XState s = make_initial_state({kind, p, {}});
            CHECK(std::abs(s.a + s.b + s.c + s.d - 1.0) <= 1e-15);
            CHECK(validate_density(xstate_to_matrix(s)).ok());
        }
    }
}

TEST_CASE("xstate embedding places the coherences on the anti-diagonal") {
    XState s;
    s.a = 0.4;
    s.b = 0.3;
    s.c = 0.2;
    s.d = 0.1;
    s.w = cplx(0.05, 0.02);
    s.z = cplx(-0.04, 0.01);
    const Operator4 rho = xstate_to_matrix(s);
    CHECK(rho(0, 3) == s.w);
    CHECK(rho(3, 0) == std::conj(s.w));
    CHECK(rho(1, 2) == s.z);
    CHECK(rho(2, 1) == std::conj(s.z));
    CHECK(non_x_magnitude(rho) == 0.0);

    const XState back = matrix_to_xstate(rho);
    CHECK(back.a == s.a);
    CHECK(back.w == s.w);
    CHECK(back.z == s.z);
}

TEST_CASE("invalid states are rejected") {
    XState bad;
    bad.a = bad.b = bad.c = bad.d = 0.275;  // trace 1.1
    CHECK_THROWS_AS(xstate_to_matrix(bad), ValidationError);

    XState neg;
    neg.a = 0.1;
    neg.b = 0.4;
    neg.c = 0.4;
    neg.d = 0.1;
    neg.w = 0.2;  // |w| > sqrt(ad)
    CHECK_THROWS_AS(xstate_to_matrix(neg), ValidationError);

    ScenarioSpec raw;
    raw.kind = ScenarioKind::raw;
    raw.raw_state = neg;
    CHECK_THROWS_AS(make_initial_state(raw), ValidationError);

    CHECK_THROWS_AS(make_initial_state({ScenarioKind::bell_phi, 1.2, {}}), ConfigError);
}

TEST_CASE("random valid X-states pass density validation") {
    for (int trial = 0; trial < 200; ++trial) {
        const XState s = testsup::random_xstate();
        CHECK(validate_density(xstate_to_matrix(s)).ok());
    }
}

TEST_CASE("matrix_to_xstate rejects non-X matrices") {
    Operator4 rho = cplx(0.25) * Operator4::identity();
    rho(0, 1) = 0.01;
    rho(1, 0) = 0.01;
    CHECK_THROWS_AS(matrix_to_xstate(rho), ValidationError);
}
