#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace spinpair {

using cplx = std::complex<double>;

/// Dense NxN complex matrix with value semantics, row-major storage.
/// Basis order for two-qubit operators is fixed everywhere:
/// row/column 0..3 correspond to |00>, |01>, |10>, |11>.
template <std::size_t N>
struct Matrix {
    std::array<cplx, N * N> e{};

    cplx& operator()(std::size_t r, std::size_t c) { return e[r * N + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return e[r * N + c]; }

    static Matrix zero() { return Matrix{}; }

    static Matrix identity() {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    Matrix adjoint() const {
        Matrix m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) m(r, c) = std::conj((*this)(c, r));
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cplx& v : e) s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& v : e) m = std::max(m, std::abs(v));
        return m;
    }

    Matrix& operator+=(const Matrix& o) {
        for (std::size_t i = 0; i < N * N; ++i) e[i] += o.e[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (std::size_t i = 0; i < N * N; ++i) e[i] -= o.e[i];
        return *this;
    }
    Matrix& operator*=(const cplx& s) {
        for (auto& v : e) v *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const cplx& s) { return a *= s; }
    friend Matrix operator*(const cplx& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t k = 0; k < N; ++k) {
                const cplx ark = a(r, k);
                if (ark == cplx{}) continue;
                for (std::size_t c = 0; c < N; ++c) m(r, c) += ark * b(k, c);
            }
        return m;
    }
};

using Matrix2 = Matrix<2>;
using Matrix3 = Matrix<3>;
using Matrix4 = Matrix<4>;

/// Two-qubit operator in the fixed |00>,|01>,|10>,|11> basis.
using Operator4 = Matrix4;

template <std::size_t N>
using Vector = std::array<cplx, N>;

using Vector4 = Vector<4>;

template <std::size_t N>
inline Vector<N> operator*(const Matrix<N>& m, const Vector<N>& v) {
    Vector<N> r{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r[i] += m(i, j) * v[j];
    return r;
}

/// <a|b> with conjugation on the first argument.
template <std::size_t N>
inline cplx inner(const Vector<N>& a, const Vector<N>& b) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += std::conj(a[i]) * b[i];
    return s;
}

template <std::size_t N>
inline double vec_norm(const Vector<N>& v) {
    double s = 0.0;
    for (const cplx& x : v) s += std::norm(x);
    return std::sqrt(s);
}

/// |a><b| outer product.
template <std::size_t N>
inline Matrix<N> outer(const Vector<N>& a, const Vector<N>& b) {
    Matrix<N> m;
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) m(r, c) = a[r] * std::conj(b[c]);
    return m;
}

template <std::size_t N>
inline double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < N * N; ++i) m = std::max(m, std::abs(a.e[i] - b.e[i]));
    return m;
}

// Small real 3-vector / 3x3 helpers for Bloch-space work.
using Vec3 = std::array<double, 3>;

struct Mat3r {
    std::array<double, 9> e{};
    double& operator()(std::size_t r, std::size_t c) { return e[r * 3 + c]; }
    const double& operator()(std::size_t r, std::size_t c) const { return e[r * 3 + c]; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm3(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline Vec3 scaled(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
inline Vec3 add3(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 sub3(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

inline Mat3r mul3(const Mat3r& a, const Mat3r& b) {
    Mat3r m;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) {
            double s = 0.0;
            for (std::size_t k = 0; k < 3; ++k) s += a(r, k) * b(k, c);
            m(r, c) = s;
        }
    return m;
}

inline Mat3r transpose3(const Mat3r& a) {
    Mat3r m;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) m(r, c) = a(c, r);
    return m;
}

inline double det3(const Mat3r& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

inline Vec3 mul3v(const Mat3r& m, const Vec3& v) {
    return {m(0, 0) * v[0] + m(0, 1) * v[1] + m(0, 2) * v[2],
            m(1, 0) * v[0] + m(1, 1) * v[1] + m(1, 2) * v[2],
            m(2, 0) * v[0] + m(2, 1) * v[1] + m(2, 2) * v[2]};
}

}  // namespace spinpair
