#include "spinpair/model.hpp"

#include <cmath>

#include "spinpair/errors.hpp"
#include "spinpair/qmath.hpp"

namespace spinpair {

void ModelParams::validate() const {
    for (double v : {j_plus, j_minus, j_z, dm, field, inhomogeneity, gamma})
        if (!std::isfinite(v)) throw ConfigError("model parameters must be finite");
    if (gamma < 0.0) throw ConfigError("gamma must be non-negative");
}

Operator4 build_hamiltonian(const ModelParams& p) {
    p.validate();
    Operator4 h;
    h(0, 0) = 0.5 * p.j_z + p.field;
    h(1, 1) = p.inhomogeneity - 0.5 * p.j_z;
    h(2, 2) = -p.inhomogeneity - 0.5 * p.j_z;
    h(3, 3) = 0.5 * p.j_z - p.field;
    h(0, 3) = p.j_minus;
    h(3, 0) = p.j_minus;
    h(1, 2) = cplx(p.j_plus, p.dm);
    h(2, 1) = cplx(p.j_plus, -p.dm);
    return h;
}

namespace {

// Embed a 2x2 eigenproblem solved numerically into the 4-dim basis.
// rows/cols (i0, i1) of H; eigenvalues assigned descending to (k_hi, k_lo).
void fill_block_numeric(const Operator4& h, std::size_t i0, std::size_t i1, std::size_t k_hi,
                        std::size_t k_lo, SpectralData& sd) {
    Matrix2 block;
    block(0, 0) = h(i0, i0);
    block(0, 1) = h(i0, i1);
    block(1, 0) = h(i1, i0);
    block(1, 1) = h(i1, i1);
    const auto es = hermitian_eigendecompose(block);
    sd.energies[k_hi] = es.eigenvalues[0];
    sd.energies[k_lo] = es.eigenvalues[1];
    for (std::size_t col = 0; col < 2; ++col) {
        const std::size_t k = col == 0 ? k_hi : k_lo;
        sd.vectors(i0, k) = es.vectors(0, col);
        sd.vectors(i1, k) = es.vectors(1, col);
    }
}

void fill_vector(SpectralData& sd, std::size_t k, std::size_t slot_main, std::size_t slot_one,
                 const cplx& coeff, double& normalizer) {
    const double n = 1.0 / std::sqrt(1.0 + std::norm(coeff));
    sd.vectors(slot_main, k) = coeff * n;
    sd.vectors(slot_one, k) = n;
    normalizer = n;
}

}  // namespace

SpectralData analytic_spectrum(const ModelParams& p) {
    p.validate();
    SpectralData sd;

    const double q_inner = p.dm * p.dm + p.j_plus * p.j_plus;
    const double lam = p.inhomogeneity;
    sd.eta = std::sqrt(lam * lam + q_inner);
    sd.mu = std::hypot(p.field, p.j_minus);

    sd.eta_zero = sd.eta < kDegenerateThreshold;
    sd.mu_zero = sd.mu < kDegenerateThreshold;
    sd.inner_coupling_zero = std::sqrt(q_inner) < kDegenerateThreshold;
    sd.outer_coupling_zero = std::abs(p.j_minus) < kDegenerateThreshold;

    sd.energies[0] = -0.5 * p.j_z + sd.eta;
    sd.energies[1] = -0.5 * p.j_z - sd.eta;
    sd.energies[2] = 0.5 * p.j_z + sd.mu;
    sd.energies[3] = 0.5 * p.j_z - sd.mu;

    const Operator4 h = build_hamiltonian(p);

    if (sd.inner_degenerate()) {
        fill_block_numeric(h, 1, 2, 0, 1, sd);
    } else {
        // eta -+ lambda computed cancellation-free via q_inner = eta^2 - lambda^2.
        const double eta_m_lam = lam > 0.0 ? q_inner / (sd.eta + lam) : sd.eta - lam;
        const double eta_p_lam = lam < 0.0 ? q_inner / (sd.eta - lam) : sd.eta + lam;
        const cplx denom(p.j_plus, p.dm);
        fill_vector(sd, 0, 2, 1, eta_m_lam / denom, sd.n_plus);
        fill_vector(sd, 1, 2, 1, -eta_p_lam / denom, sd.n_minus);
    }

    if (sd.outer_degenerate()) {
        fill_block_numeric(h, 0, 3, 2, 3, sd);
    } else {
        const double jm2 = p.j_minus * p.j_minus;
        const double b_p_mu = p.field < 0.0 ? jm2 / (sd.mu - p.field) : p.field + sd.mu;
        const double b_m_mu = p.field > 0.0 ? -jm2 / (sd.mu + p.field) : p.field - sd.mu;
        fill_vector(sd, 2, 0, 3, b_p_mu / p.j_minus, sd.m_plus);
        fill_vector(sd, 3, 0, 3, b_m_mu / p.j_minus, sd.m_minus);
    }

    return sd;
}

}  // namespace spinpair
