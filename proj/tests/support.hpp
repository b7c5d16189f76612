// Shared helpers for the test suites: deterministic random generators for
// Hermitian matrices, unitaries, density matrices and X-states, plus an
// eigenbasis matrix exponential used to build reference unitaries.
#pragma once

#include <cmath>
#include <random>

#include "spinpair/matrix.hpp"
#include "spinpair/qmath.hpp"
#include "spinpair/states.hpp"

namespace testsup {

using spinpair::cplx;
using spinpair::Matrix2;
using spinpair::Matrix4;
using spinpair::Operator4;
using spinpair::XState;

inline std::mt19937& rng() {
    static std::mt19937 gen(20250519u);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

template <std::size_t N>
spinpair::Matrix<N> random_hermitian(double scale = 1.0) {
    spinpair::Matrix<N> m;
    for (std::size_t r = 0; r < N; ++r) {
        m(r, r) = uniform(-scale, scale);
        for (std::size_t c = r + 1; c < N; ++c) {
            const cplx v(uniform(-scale, scale), uniform(-scale, scale));
            m(r, c) = v;
            m(c, r) = std::conj(v);
        }
    }
    return m;
}

/// exp(i * h) for Hermitian h, via eigendecomposition.
template <std::size_t N>
spinpair::Matrix<N> unitary_from_hermitian(const spinpair::Matrix<N>& h) {
    const auto es = spinpair::hermitian_eigendecompose(h);
    spinpair::Matrix<N> u;
    for (std::size_t k = 0; k < N; ++k) {
        const auto v = es.eigenvector(k);
        u += std::polar(1.0, es.eigenvalues[k]) * spinpair::outer(v, v);
    }
    return u;
}

template <std::size_t N>
spinpair::Matrix<N> random_unitary(double scale = 1.0) {
    return unitary_from_hermitian(random_hermitian<N>(scale));
}

inline Operator4 random_density() {
    Matrix4 g;
    for (auto& v : g.e) v = cplx(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
    Matrix4 rho = g * g.adjoint();
    rho *= 1.0 / rho.trace();
    return rho;
}

/// Valid X-state with uniformly mixed populations and coherences drawn
/// inside the positivity disks; roughly one in four draws keeps w (or z)
/// real to exercise the real-coherence paths.
inline XState random_xstate() {
    double pop[4];
    double sum = 0.0;
    for (double& p : pop) {
        p = -std::log(uniform(1e-12, 1.0));
        sum += p;
    }
    XState s;
    s.a = pop[0] / sum;
    s.b = pop[1] / sum;
    s.c = pop[2] / sum;
    s.d = pop[3] / sum;
    const double wmag = uniform(0.0, 1.0) * std::sqrt(s.a * s.d);
    const double zmag = uniform(0.0, 1.0) * std::sqrt(s.b * s.c);
    const double wphase = uniform(0.0, 1.0) < 0.25 ? 0.0 : uniform(0.0, 2.0 * M_PI);
    const double zphase = uniform(0.0, 1.0) < 0.25 ? 0.0 : uniform(0.0, 2.0 * M_PI);
    s.w = std::polar(wmag, wphase);
    s.z = std::polar(zmag, zphase);
    return s;
}

inline Operator4 bell_phi_plus() {
    Operator4 rho;
    rho(0, 0) = rho(0, 3) = rho(3, 0) = rho(3, 3) = 0.5;
    return rho;
}

}  // namespace testsup
