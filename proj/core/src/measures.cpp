#include "spinpair/measures.hpp"

#include <algorithm>
#include <cmath>

#include "spinpair/qmath.hpp"

namespace spinpair {

namespace {

Operator4 hermitian_sqrt(const Operator4& m) {
    const auto es = hermitian_eigendecompose(m, 1e-8);
    Operator4 s;
    for (std::size_t k = 0; k < 4; ++k) {
        const double lam = es.eigenvalues[k];
        const double root = lam > 0.0 ? std::sqrt(lam) : 0.0;
        const auto v = es.eigenvector(k);
        s += cplx(root) * outer(v, v);
    }
    return s;
}

Operator4 spin_flip(const Operator4& rho) {
    const Matrix4 yy = kron(sigma_y(), sigma_y());
    Operator4 conj_rho;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) conj_rho(r, c) = std::conj(rho(r, c));
    return yy * conj_rho * yy;
}

}  // namespace

double concurrence_general(const Operator4& rho) {
    // Eigenvalues of rho rho~ equal those of the Hermitian sqrt(rho) rho~ sqrt(rho).
    const Operator4 root = hermitian_sqrt(rho);
    const Operator4 k = root * spin_flip(rho) * root;
    const auto es = hermitian_eigendecompose(k, 1e-8);
    std::array<double, 4> lam{};
    for (std::size_t i = 0; i < 4; ++i) {
        const double e = es.eigenvalues[i];
        lam[i] = e > 0.0 ? std::sqrt(e) : 0.0;  // clamp round-off negatives
    }
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double concurrence_xstate(const XState& s) {
    const double outer_branch = std::abs(s.w) - std::sqrt(std::max(0.0, s.b * s.c));
    const double inner_branch = std::abs(s.z) - std::sqrt(std::max(0.0, s.a * s.d));
    return 2.0 * std::max({0.0, outer_branch, inner_branch});
}

namespace {

constexpr double kMarginalDegenerateTol = 1e-9;

double tr_ttt(const Mat3r& T) {
    double s = 0.0;
    for (double v : T.e) s += v * v;
    return s;
}

}  // namespace

double min_hs_closed(const Operator4& rho) {
    const BlochRep rep = bloch_decompose(rho);
    const double xn = norm3(rep.x);
    const Mat3r ttt = mul3(rep.T, transpose3(rep.T));
    if (xn > kMarginalDegenerateTol) {
        const Vec3 tx = mul3v(ttt, rep.x);
        return 0.25 * (tr_ttt(rep.T) - dot(rep.x, tx) / (xn * xn));
    }
    Matrix3 gram;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) gram(r, c) = ttt(r, c);
    const auto es = hermitian_eigendecompose(gram, 1e-8);
    return 0.25 * (tr_ttt(rep.T) - es.eigenvalues[2]);
}

double min_trace_closed(const Operator4& rho) {
    const BlochRep rep = bloch_decompose(rho);
    const CorrelationFrame frame = correlation_frame(rep.T);
    const Vec3& c = frame.sigma;  // formula uses c_i^2 and |c_i| only

    const double xn = norm3(rep.x);
    if (xn <= kMarginalDegenerateTol) return std::max({c[0], c[1], c[2]});

    // Bloch vector in T's canonical frame.
    const Vec3 xr = mul3v(transpose3(frame.axes), rep.x);
    const double c2 = dot(c, c);
    double alpha = c2 * xn * xn;
    for (std::size_t i = 0; i < 3; ++i) alpha -= c[i] * c[i] * xr[i] * xr[i];
    const double beta = xr[0] * xr[0] * c[1] * c[1] * c[2] * c[2] +
                        xr[1] * xr[1] * c[2] * c[2] * c[0] * c[0] +
                        xr[2] * xr[2] * c[0] * c[0] * c[1] * c[1];
    const double chi_p = std::max(0.0, alpha + 2.0 * std::sqrt(beta) * xn);
    const double chi_m = std::max(0.0, alpha - 2.0 * std::sqrt(beta) * xn);
    return (std::sqrt(chi_p) + std::sqrt(chi_m)) / (2.0 * xn);
}

XStateMins min_xstate(const XState& s) {
    XStateMins out;
    if (std::abs(s.a + s.b - s.c - s.d) > kMarginalDegenerateTol) {
        const double aw = std::abs(s.w);
        const double az = std::abs(s.z);
        out.hs = 2.0 * (az * az + aw * aw);
        out.trace = 2.0 * (az + aw);
        return out;
    }
    const Operator4 rho = xstate_to_matrix(s);
    out.hs = min_hs_closed(rho);
    out.trace = min_trace_closed(rho);
    out.routed = true;
    return out;
}

Operator4 project_a(const Operator4& rho, const Vec3& n) {
    Matrix2 ns;
    ns(0, 0) = n[2];
    ns(1, 1) = -n[2];
    ns(0, 1) = cplx(n[0], -n[1]);
    ns(1, 0) = cplx(n[0], n[1]);
    const Matrix4 a = kron(ns, Matrix2::identity());
    // P+ rho P+ + P- rho P- = (rho + A rho A)/2 for A = n.sigma ox I.
    return cplx(0.5) * (rho + a * rho * a);
}

namespace {

double disturbance(const Operator4& rho, const Vec3& n, MinNorm norm) {
    const Operator4 delta = rho - project_a(rho, n);
    if (norm == MinNorm::hs) {
        double s = 0.0;
        for (const cplx& v : delta.e) s += std::norm(v);
        return s;
    }
    return trace_norm(delta);
}

Vec3 angles_to_unit(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

}  // namespace

double min_numeric(const Operator4& rho, MinNorm norm) {
    const Matrix2 marg = marginal_a(rho);
    const auto ev = eigenvalues2(marg);
    if (ev[0] - ev[1] > kMarginalDegenerateTol) {
        // Invariance of the marginal pins the projectors to its eigenbasis.
        Vec3 x = {2.0 * marg(0, 1).real(), -2.0 * marg(0, 1).imag(),
                  marg(0, 0).real() - marg(1, 1).real()};
        const double xn = norm3(x);
        return disturbance(rho, scaled(x, 1.0 / xn), norm);
    }

    // Degenerate marginal: golden-spiral grid then coordinate descent.
    constexpr std::size_t kGridPoints = 10000;
    const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
    double best = -1.0;
    double best_theta = 0.0, best_phi = 0.0;
    for (std::size_t k = 0; k < kGridPoints; ++k) {
        const double z = 1.0 - 2.0 * (k + 0.5) / kGridPoints;
        const double theta = std::acos(z);
        const double phi = std::fmod(k * golden_angle, 2.0 * M_PI);
        const double val = disturbance(rho, angles_to_unit(theta, phi), norm);
        if (val > best) {
            best = val;
            best_theta = theta;
            best_phi = phi;
        }
    }

    double step = 0.02;
    while (step >= 1e-6) {
        bool improved = false;
        const double candidates[4][2] = {{best_theta + step, best_phi},
                                         {best_theta - step, best_phi},
                                         {best_theta, best_phi + step},
                                         {best_theta, best_phi - step}};
        for (const auto& cand : candidates) {
            const double val = disturbance(rho, angles_to_unit(cand[0], cand[1]), norm);
            if (val > best) {
                best = val;
                best_theta = cand[0];
                best_phi = cand[1];
                improved = true;
            }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

double purity(const Operator4& rho) {
    // Tr rho^2 = sum_ij rho_ij rho_ji
    double s = 0.0;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) s += (rho(r, c) * rho(c, r)).real();
    return s;
}

CorrelationSample correlations_at(double t, const XState& s) {
    CorrelationSample sample;
    sample.t = t;
    sample.concurrence = concurrence_xstate(s);
    const XStateMins mins = min_xstate(s);
    sample.min_hs = mins.hs;
    sample.min_trace = mins.trace;
    sample.purity = purity(xstate_to_matrix(s));
    return sample;
}

}  // namespace spinpair
