#pragma once

#include "treeharm/abel.hpp"
#include "treeharm/radial_kernel.hpp"
#include "treeharm/zline.hpp"

namespace treeharm {

/// Distance from z to the pole lattice (τ/2)Z of c.
double pole_distance(const TreeParams& params, cplx z);

/// c(z) = (√q/(q+1)) (q^{1/2+iz} − q^{−1/2−iz}) / (q^{iz} − q^{−iz}).
/// Throws std::invalid_argument within 1e−8 of (τ/2)Z.
cplx c_function(const TreeParams& params, cplx z);

/// 1/c(−s − iv), holomorphic for v > −1/2. v must lie in (−1/2, 1/2].
cplx c_inv_shifted(const TreeParams& params, double s, double v);

/// sup_s |1/c(−s − iv)| in closed form (extremes at q^{is} = ±1).
double c_inv_line_sup(const TreeParams& params, double v);

/// γ(z) = (√q/(q+1))(q^{iz} + q^{−iz}), the eigenvalue of the
/// nearest-neighbour average on φ_z.
cplx eigenvalue_gamma(const TreeParams& params, cplx z);

/// φ_z(d). Exact lattice points use the exceptional-case closed forms and
/// points within 1e−6 of (τ/2)Z the pole-free finite-sum form; elsewhere
/// c(z) q^{(iz−1/2)d} + c(−z) q^{(−iz−1/2)d}.
cplx spherical_function(const TreeParams& params, cplx z, int d);

/// k̃(z) = k(0) + Σ_{d≥1} (q+1) q^{d−1} k(d) φ_z(d).
cplx spherical_transform(const RadialKernel& k, cplx z);

/// k̃ sampled on the N-node grid of the line Im z = shift.
TorusSymbol sample_spherical_transform(const RadialKernel& k, int N, double shift = 0.0);

/// k(d) = 2c_G q^{−d/2} ∫_T k̃(s) c(−s)^{−1} q^{isd} ds by the trapezoid rule.
/// The symbol must lie on Im z = 0 and have a power-of-two N ≥ 64.
cplx inverse_transform(const TorusSymbol& symbol, int d);

/// φ(ℓ), |ℓ| ≤ L, together with the quadrature actually used.
struct PhiSequence {
  ZKernel phi;
  double p = 1.0;
  int grid_nodes = 0;
  int half_width = 0;
};

/// D + ⌈40 / (2δ(p) log q)⌉.
int default_phi_half_width(const RadialKernel& k, double p);

/// φ(ℓ) = 2c_G ∫_T k̃(s + iδ) c(−s − iδ)^{−1} q^{isℓ} ds, δ = δ(p), with the
/// shifted symbol taken from the Abel coefficients a_j q^{jδ}. The grid is
/// raised above N when needed so that 2L + 2 ≤ N. half_width < 0 selects the
/// default. Throws ScopeError unless 1 ≤ p < 2.
PhiSequence phi_sequence(const RadialKernel& k, double p, int N = 512, int half_width = -1);

/// 2c_G τ · max_{v = ±δ} sup|k̃_v| · sup|c(−· − iv)^{−1}|: a certified bound
/// for ‖ℱφ‖_{H^∞(Σ_{2δ})}, and so for |φ(ℓ)| q^{−2δℓ}, ℓ ≤ −1. Needs 1 < p < 2.
double phi_hinf_bound(const RadialKernel& k, double p);

}  // namespace treeharm
