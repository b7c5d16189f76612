#pragma once

#include <array>
#include <string>
#include <vector>

#include "spinpair/matrix.hpp"

namespace spinpair {

// Pauli matrices and two-qubit tensor products.
Matrix2 sigma_x();
Matrix2 sigma_y();
Matrix2 sigma_z();
Matrix4 kron(const Matrix2& a, const Matrix2& b);

/// Eigensystem of a Hermitian matrix. Eigenvalues sorted descending,
/// eigenvectors stored as the matching columns of `vectors`; each vector
/// is phase-fixed so its first component above 1e-12 is real positive.
template <std::size_t N>
struct HermitianEigenSystem {
    std::array<double, N> eigenvalues{};
    Matrix<N> vectors;

    Vector<N> eigenvector(std::size_t k) const {
        Vector<N> v{};
        for (std::size_t i = 0; i < N; ++i) v[i] = vectors(i, k);
        return v;
    }
};

/// Cyclic Jacobi eigendecomposition for Hermitian matrices of dimension <= 4.
/// Convergence: off-diagonal Frobenius mass below 1e-14 * max(1, ||m||_F).
/// Throws ValidationError if m deviates from Hermiticity by more than
/// `hermiticity_tol` in any element.
template <std::size_t N>
HermitianEigenSystem<N> hermitian_eigendecompose(const Matrix<N>& m,
                                                 double hermiticity_tol = 1e-10);

/// Singular values (descending). Computed as square roots of the
/// eigenvalues of m^dagger m; tiny negative eigenvalues are clamped to zero.
template <std::size_t N>
std::array<double, N> singular_values(const Matrix<N>& m);

/// Sum of singular values.
template <std::size_t N>
double trace_norm(const Matrix<N>& m) {
    auto s = singular_values(m);
    double t = 0.0;
    for (double v : s) t += v;
    return t;
}

/// Partial trace over the second qubit.
Matrix2 marginal_a(const Operator4& rho);

/// Eigenvalues of a 2x2 Hermitian matrix, descending (closed form).
std::array<double, 2> eigenvalues2(const Matrix2& m);

/// Pauli expansion of a two-qubit state:
///   rho = (1/4)(I + sum_i x_i s_i ox I + sum_j y_j I ox s_j + sum_ij T_ij s_i ox s_j)
/// `c` holds the canonical correlation values: the singular values of T in
/// descending order, with the sign of det(T) carried on the last entry so
/// that a pair of proper local rotations maps T to diag(c).
struct BlochRep {
    Vec3 x{};
    Vec3 y{};
    Mat3r T;
    Vec3 c{};
};

BlochRep bloch_decompose(const Operator4& rho);

/// Rebuild the density matrix from a Bloch representation.
Operator4 bloch_reconstruct(const BlochRep& rep);

/// Frame that diagonalizes T T^T: `sigma` are the singular values of T
/// (descending) and column k of `axes` is the corresponding left singular
/// direction. Used to express the local Bloch vector in T's canonical frame.
struct CorrelationFrame {
    Vec3 sigma{};
    Mat3r axes;
    double det_sign = 1.0;
};

CorrelationFrame correlation_frame(const Mat3r& T);

/// Density-matrix validity report: unit trace, Hermiticity and positivity,
/// each checked against `tol` with the offending magnitudes recorded.
struct DensityReport {
    double trace_error = 0.0;
    double hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;
    double tol = 0.0;
    bool trace_ok = false;
    bool hermitian_ok = false;
    bool positive_ok = false;

    bool ok() const { return trace_ok && hermitian_ok && positive_ok; }
    std::vector<std::string> violations() const;
    std::string summary() const;
};

DensityReport validate_density(const Operator4& rho, double tol = 1e-9);

/// Throws ValidationError with the report summary when the check fails.
void require_valid_density(const Operator4& rho, double tol = 1e-9);

}  // namespace spinpair
