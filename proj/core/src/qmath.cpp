#include "spinpair/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spinpair/errors.hpp"

namespace spinpair {

Matrix2 sigma_x() {
    Matrix2 m;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

Matrix2 sigma_y() {
    Matrix2 m;
    m(0, 1) = cplx(0.0, -1.0);
    m(1, 0) = cplx(0.0, 1.0);
    return m;
}

Matrix2 sigma_z() {
    Matrix2 m;
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
    Matrix4 m;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return m;
}

namespace {

template <std::size_t N>
double off_diagonal_mass(const Matrix<N>& a) {
    double s = 0.0;
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c)
            if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

// Phase-fix: first component with |v_k| > 1e-12 made real positive.
template <std::size_t N>
void normalize_phase(Vector<N>& v) {
    for (std::size_t k = 0; k < N; ++k) {
        const double a = std::abs(v[k]);
        if (a > 1e-12) {
            const cplx phase = std::conj(v[k]) / a;
            for (auto& x : v) x *= phase;
            v[k] = a;  // kill residual imaginary round-off on the anchor
            return;
        }
    }
}

// Lexicographic comparison of phased vectors, (Re, Im) per component.
template <std::size_t N>
bool vector_less(const Vector<N>& a, const Vector<N>& b) {
    for (std::size_t i = 0; i < N; ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return false;
}

}  // namespace

template <std::size_t N>
HermitianEigenSystem<N> hermitian_eigendecompose(const Matrix<N>& m, double hermiticity_tol) {
    // Reject non-Hermitian input, naming the worst offender.
    double worst = 0.0;
    std::size_t wr = 0, wc = 0;
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) {
            const double d = std::abs(m(r, c) - std::conj(m(c, r)));
            if (d > worst) {
                worst = d;
                wr = r;
                wc = c;
            }
        }
    if (worst > hermiticity_tol) {
        std::ostringstream os;
        os << "hermitian_eigendecompose: |m(" << wr << "," << wc << ") - conj(m(" << wc << ","
           << wr << "))| = " << worst << " exceeds tolerance " << hermiticity_tol;
        throw ValidationError(os.str());
    }

    Matrix<N> a = m;
    // Symmetrize round-off so the sweep sees an exactly Hermitian matrix.
    for (std::size_t r = 0; r < N; ++r) {
        a(r, r) = a(r, r).real();
        for (std::size_t c = r + 1; c < N; ++c) {
            const cplx v = 0.5 * (a(r, c) + std::conj(a(c, r)));
            a(r, c) = v;
            a(c, r) = std::conj(v);
        }
    }

    Matrix<N> vecs = Matrix<N>::identity();
    const double tol = 1e-14 * std::max(1.0, a.frobenius_norm());

    for (int sweep = 0; sweep < 60 && off_diagonal_mass(a) > tol; ++sweep) {
        for (std::size_t p = 0; p + 1 < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const cplx g = a(p, q);
                if (std::abs(g) == 0.0) continue;

                // Unitary that diagonalizes the (p,q) 2x2 Hermitian block.
                const double alpha = a(p, p).real();
                const double beta = a(q, q).real();
                const double delta = 0.5 * (alpha - beta);
                const double rad = std::hypot(delta, std::abs(g));
                const double mid = 0.5 * (alpha + beta);
                const double lam_hi = mid + rad;
                const double lam_lo = mid - rad;

                cplx u, v;  // unit eigenvector (u, v) for lam_hi
                if (delta >= 0.0) {
                    u = lam_hi - beta;  // = delta + rad, no cancellation
                    v = std::conj(g);
                } else {
                    u = g;
                    v = lam_hi - alpha;  // = rad - delta
                }
                const double nrm = std::sqrt(std::norm(u) + std::norm(v));
                u /= nrm;
                v /= nrm;

                // Columns of U: (u, v) and (-conj(v), conj(u)).
                for (std::size_t k = 0; k < N; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * u + akq * v;
                    a(k, q) = -akp * std::conj(v) + akq * std::conj(u);
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(u) * apk + std::conj(v) * aqk;
                    a(q, k) = -v * apk + u * aqk;
                }
                a(p, p) = lam_hi;
                a(q, q) = lam_lo;
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                for (std::size_t k = 0; k < N; ++k) {
                    const cplx vkp = vecs(k, p), vkq = vecs(k, q);
                    vecs(k, p) = vkp * u + vkq * v;
                    vecs(k, q) = -vkp * std::conj(v) + vkq * std::conj(u);
                }
            }
        }
    }

    std::array<double, N> evals{};
    std::array<Vector<N>, N> evecs{};
    for (std::size_t k = 0; k < N; ++k) {
        evals[k] = a(k, k).real();
        for (std::size_t i = 0; i < N; ++i) evecs[k][i] = vecs(i, k);
        normalize_phase(evecs[k]);
    }

    std::array<std::size_t, N> order{};
    for (std::size_t k = 0; k < N; ++k) order[k] = k;
    const double tie = 1e-12 * std::max(1.0, m.frobenius_norm());
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (std::abs(evals[i] - evals[j]) > tie) return evals[i] > evals[j];
        return vector_less(evecs[i], evecs[j]);
    });

    HermitianEigenSystem<N> out;
    for (std::size_t k = 0; k < N; ++k) {
        out.eigenvalues[k] = evals[order[k]];
        for (std::size_t i = 0; i < N; ++i) out.vectors(i, k) = evecs[order[k]][i];
    }
    return out;
}

template HermitianEigenSystem<2> hermitian_eigendecompose<2>(const Matrix<2>&, double);
template HermitianEigenSystem<3> hermitian_eigendecompose<3>(const Matrix<3>&, double);
template HermitianEigenSystem<4> hermitian_eigendecompose<4>(const Matrix<4>&, double);

template <std::size_t N>
std::array<double, N> singular_values(const Matrix<N>& m) {
    const Matrix<N> gram = m.adjoint() * m;
    const auto es = hermitian_eigendecompose(gram, 1e-8 * std::max(1.0, gram.frobenius_norm()));
    std::array<double, N> s{};
    for (std::size_t k = 0; k < N; ++k) {
        const double v = es.eigenvalues[k];
        s[k] = v > 0.0 ? std::sqrt(v) : 0.0;
    }
    return s;
}

template std::array<double, 2> singular_values<2>(const Matrix<2>&);
template std::array<double, 3> singular_values<3>(const Matrix<3>&);
template std::array<double, 4> singular_values<4>(const Matrix<4>&);

Matrix2 marginal_a(const Operator4& rho) {
    Matrix2 m;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            m(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
    return m;
}

std::array<double, 2> eigenvalues2(const Matrix2& m) {
    const double mid = 0.5 * (m(0, 0).real() + m(1, 1).real());
    const double rad = std::hypot(0.5 * (m(0, 0).real() - m(1, 1).real()), std::abs(m(0, 1)));
    return {mid + rad, mid - rad};
}

namespace {

const std::array<Matrix2, 3>& pauli() {
    static const std::array<Matrix2, 3> p = {sigma_x(), sigma_y(), sigma_z()};
    return p;
}

double re_trace_product(const Operator4& rho, const Matrix4& op) {
    cplx t = 0.0;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) t += rho(r, c) * op(c, r);
    return t.real();
}

}  // namespace

BlochRep bloch_decompose(const Operator4& rho) {
    BlochRep rep;
    const Matrix2 id = Matrix2::identity();
    for (std::size_t i = 0; i < 3; ++i) {
        rep.x[i] = re_trace_product(rho, kron(pauli()[i], id));
        rep.y[i] = re_trace_product(rho, kron(id, pauli()[i]));
        for (std::size_t j = 0; j < 3; ++j)
            rep.T(i, j) = re_trace_product(rho, kron(pauli()[i], pauli()[j]));
    }
    const CorrelationFrame frame = correlation_frame(rep.T);
    rep.c = {frame.sigma[0], frame.sigma[1], frame.det_sign * frame.sigma[2]};
    return rep;
}

Operator4 bloch_reconstruct(const BlochRep& rep) {
    const Matrix2 id = Matrix2::identity();
    Operator4 rho = kron(id, id);
    for (std::size_t i = 0; i < 3; ++i) {
        rho += rep.x[i] * kron(pauli()[i], id);
        rho += rep.y[i] * kron(id, pauli()[i]);
        for (std::size_t j = 0; j < 3; ++j) rho += rep.T(i, j) * kron(pauli()[i], pauli()[j]);
    }
    rho *= 0.25;
    return rho;
}

CorrelationFrame correlation_frame(const Mat3r& T) {
    // Eigenvectors of T T^T give the left singular frame.
    Matrix3 gram;
    const Mat3r tt = mul3(T, transpose3(T));
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) gram(r, c) = tt(r, c);

    const auto es = hermitian_eigendecompose(gram, 1e-8 * std::max(1.0, gram.frobenius_norm()));

    CorrelationFrame frame;
    for (std::size_t k = 0; k < 3; ++k) {
        const double v = es.eigenvalues[k];
        frame.sigma[k] = v > 0.0 ? std::sqrt(v) : 0.0;
        for (std::size_t i = 0; i < 3; ++i) frame.axes(i, k) = es.vectors(i, k).real();
    }
    frame.det_sign = det3(T) < 0.0 ? -1.0 : 1.0;
    return frame;
}

std::vector<std::string> DensityReport::violations() const {
    std::vector<std::string> v;
    std::ostringstream os;
    if (!trace_ok) {
        os.str("");
        os << "trace deviates from 1 by " << trace_error;
        v.push_back(os.str());
    }
    if (!hermitian_ok) {
        os.str("");
        os << "hermiticity violated by " << hermiticity_error;
        v.push_back(os.str());
    }
    if (!positive_ok) {
        os.str("");
        os << "negative eigenvalue " << min_eigenvalue;
        v.push_back(os.str());
    }
    return v;
}

std::string DensityReport::summary() const {
    if (ok()) return "valid density matrix";
    std::string s = "invalid density matrix:";
    for (const auto& v : violations()) s += " " + v + ";";
    return s;
}

DensityReport validate_density(const Operator4& rho, double tol) {
    DensityReport rep;
    rep.tol = tol;
    rep.trace_error = std::abs(rho.trace() - cplx(1.0));
    rep.trace_ok = rep.trace_error <= tol;

    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            rep.hermiticity_error =
                std::max(rep.hermiticity_error, std::abs(rho(r, c) - std::conj(rho(c, r))));
    rep.hermitian_ok = rep.hermiticity_error <= tol;

    if (rep.hermitian_ok) {
        Operator4 h = rho;
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) h(r, c) = 0.5 * (rho(r, c) + std::conj(rho(c, r)));
        const auto es = hermitian_eigendecompose(h, 1.0);
        rep.min_eigenvalue = es.eigenvalues[3];
        rep.positive_ok = rep.min_eigenvalue >= -tol;
    } else {
        rep.min_eigenvalue = 0.0;
        rep.positive_ok = false;
    }
    return rep;
}

void require_valid_density(const Operator4& rho, double tol) {
    const DensityReport rep = validate_density(rho, tol);
    if (!rep.ok()) throw ValidationError(rep.summary());
}

}  // namespace spinpair
