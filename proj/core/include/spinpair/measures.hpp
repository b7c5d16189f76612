#pragma once

#include "spinpair/matrix.hpp"
#include "spinpair/states.hpp"

namespace spinpair {

/// Wootters concurrence from the spin-flipped matrix
/// R = rho (sy ox sy) rho* (sy ox sy): max{0, l1 - l2 - l3 - l4} with l_i
/// the descending square roots of R's eigenvalues.
double concurrence_general(const Operator4& rho);

/// X-state shortcut: 2 max{0, |r14| - sqrt(r22 r33), |r23| - sqrt(r11 r44)}.
double concurrence_xstate(const XState& s);

/// Hilbert-Schmidt measurement-induced nonlocality via the Bloch picture.
/// Nondegenerate marginal (||x|| > 1e-9): the invariance constraint forces
/// measurement along x, giving (Tr TT^t - x^t TT^t x / ||x||^2) / 4;
/// degenerate marginal: (Tr TT^t - min eigenvalue of TT^t) / 4.
double min_hs_closed(const Operator4& rho);

/// Trace-norm measurement-induced nonlocality. With canonical correlation
/// values c and the local Bloch vector expressed in the same frame:
///   x != 0: (sqrt(chi+) + sqrt(chi-)) / (2||x||),
///           chi+- = alpha +- 2 sqrt(beta) ||x||,
///           alpha = ||c||^2 ||x||^2 - sum_i c_i^2 x_i^2,
///           beta  = sum_cyclic x_i^2 c_j^2 c_k^2
///   x == 0: max_i |c_i|
/// All vector norms Euclidean.
double min_trace_closed(const Operator4& rho);

/// X-state shortcut (nondegenerate marginal |a+b-c-d| > 1e-9):
///   hs = 2(|z|^2 + |w|^2), trace = 2(|z| + |w|).
/// Degenerate marginals are routed to the general closed formulas and
/// flagged.
struct XStateMins {
    double hs = 0.0;
    double trace = 0.0;
    bool routed = false;
};

XStateMins min_xstate(const XState& s);

enum class MinNorm { hs, trace };

/// Brute-force oracle. Nondegenerate marginal: measurement direction forced
/// along the marginal Bloch vector, no search. Degenerate: maximum of
/// ||rho - Pi_n(rho)|| (squared Hilbert-Schmidt or trace norm) over a
/// 10000-point deterministic sphere grid, then coordinate-descent refinement
/// down to step 1e-6.
double min_numeric(const Operator4& rho, MinNorm norm);

/// Local projective measurement of subsystem a along unit vector n:
/// Pi(rho) = sum_k (P_k ox I) rho (P_k ox I), P_k = (I +- n.sigma)/2.
Operator4 project_a(const Operator4& rho, const Vec3& n);

/// Tr rho^2.
double purity(const Operator4& rho);

/// One trajectory record: correlations and purity at time t.
struct CorrelationSample {
    double t = 0.0;
    double concurrence = 0.0;
    double min_hs = 0.0;
    double min_trace = 0.0;
    double purity = 0.0;
};

/// Evaluate all measures on an X-form state.
CorrelationSample correlations_at(double t, const XState& s);

}  // namespace spinpair
