#pragma once

#include <array>

#include "spinpair/matrix.hpp"

namespace spinpair {

/// Physical couplings of the two-qubit model (hbar = 1 throughout).
/// j_plus = (Jx+Jy)/2 and j_minus = (Jx-Jy)/2 are the symmetric/antisymmetric
/// exchange combinations, dm is the z-axis Dzyaloshinskii-Moriya strength,
/// `field` the uniform magnetic field, `inhomogeneity` its antisymmetric part,
/// and gamma >= 0 the intrinsic-decoherence rate.
struct ModelParams {
    double j_plus = 0.0;
    double j_minus = 0.0;
    double j_z = 0.0;
    double dm = 0.0;
    double field = 0.0;
    double inhomogeneity = 0.0;
    double gamma = 0.0;

    /// Throws ConfigError on non-finite values or gamma < 0.
    void validate() const;
};

/// Two-qubit Hamiltonian in the |00>,|01>,|10>,|11> basis:
///   diag(Jz/2+B, lambda-Jz/2, -lambda-Jz/2, Jz/2-B),
///   (1,4)=(4,1)=J-, (2,3)=J+ + iD, (3,2)=J+ - iD.
/// Hermitian by construction.
Operator4 build_hamiltonian(const ModelParams& p);

/// Parameters below this threshold count as a vanishing formula denominator
/// or level gap; the affected block falls back to numeric diagonalization.
inline constexpr double kDegenerateThreshold = 1e-12;

/// Closed-form eigensystem of the Hamiltonian.
///
/// eta = sqrt(lambda^2 + D^2 + J+^2), mu = sqrt(B^2 + J-^2).
/// Energies in fixed label order:
///   E1,2 = -Jz/2 +- eta   (inner block, spanned by |01>,|10>)
///   E3,4 =  Jz/2 +- mu    (outer block, spanned by |00>,|11>)
/// Column k of `vectors` is the eigenvector of energies[k].
///
/// Closed-form vectors (used when the block is regular):
///   |phi_1,2> = N_pm ( (+-eta - lambda)/(J+ + iD) |10> + |01> )
///   |phi_3,4> = M_pm ( (B +- mu)/J- |00> + |11> )
/// with N_pm = sqrt((D^2+J+^2) / (2 eta (eta -+ lambda))) and
///      M_pm = sqrt(J-^2 / (2 mu (mu +- B))).
/// When a block's coupling or splitting vanishes (|J+ + iD| or |J-| or eta or
/// mu below kDegenerateThreshold) the corresponding degenerate flag is set,
/// that block's vectors come from numeric 2x2 diagonalization, and its
/// normalizers are reported as 0.
struct SpectralData {
    double eta = 0.0;
    double mu = 0.0;
    std::array<double, 4> energies{};
    Matrix4 vectors;
    double n_plus = 0.0;
    double n_minus = 0.0;
    double m_plus = 0.0;
    double m_minus = 0.0;
    bool eta_zero = false;
    bool mu_zero = false;
    bool inner_coupling_zero = false;  // |J+ + iD| ~ 0, i.e. eta ~ |lambda|
    bool outer_coupling_zero = false;  // |J-| ~ 0

    bool inner_degenerate() const { return eta_zero || inner_coupling_zero; }
    bool outer_degenerate() const { return mu_zero || outer_coupling_zero; }

    Vector4 eigenvector(std::size_t k) const {
        Vector4 v{};
        for (std::size_t i = 0; i < 4; ++i) v[i] = vectors(i, k);
        return v;
    }
};

SpectralData analytic_spectrum(const ModelParams& p);

}  // namespace spinpair
