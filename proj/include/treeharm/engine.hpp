#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treeharm/abel.hpp"
#include "treeharm/horocycle.hpp"
#include "treeharm/radial_kernel.hpp"
#include "treeharm/spherical.hpp"
#include "treeharm/tree_ball.hpp"
#include "treeharm/tree_convolution.hpp"
#include "treeharm/zline.hpp"

namespace treeharm {

/// Exponent data and the two characters of the NA = N ⋊ Z realisation.
struct GroupWeight {
  explicit GroupWeight(TreeParams params, double p);

  TreeParams params;
  double p;
  double p_conj;
  double delta;

  /// Δ_NA(n σ^j) = q^{−j}.
  double modular(int j) const { return params.pow(-static_cast<double>(j)); }
  /// 𝒟(v σ^j) = q^{−j}.
  double conjugation(int j) const { return params.pow(-static_cast<double>(j)); }
};

/// Shell m ↦ row j ↦ k(max(2m − j, j)) of a radial kernel in horocyclic
/// coordinates, cut to j ≥ 0 (χ⁺) or j ≤ −1 (χ⁻).
class HorocyclicKernel {
 public:
  HorocyclicKernel(RadialKernel k, bool negative) : k_(std::move(k)), negative_(negative) {}

  bool negative() const noexcept { return negative_; }
  const RadialKernel& kernel() const noexcept { return k_; }
  cplx operator()(int m, int j) const {
    if ((j <= -1) != negative_) return {};
    return k_(HorocycleMeasure::cell_distance(j, m));
  }
  /// The nonzero part of row m, indexed by j (empty kernel when the row vanishes).
  ZKernel row(int m) const;
  /// Largest shell with a nonzero entry in the χ⁻ part, −1 if none.
  int last_shell() const;

 private:
  RadialKernel k_;
  bool negative_;
};

struct SplitKernel {
  HorocyclicKernel negative;
  HorocyclicKernel positive;
};

SplitKernel split_kernel(const RadialKernel& k);

/// Step I: Σ_m μ_m q^{−2m/p} (‖φ‖_{Cv_p} + (1/(q^{2δ} − 1) + 2m + 1) H), with
/// H = phi_hinf_bound(k, p). Zero for point masses (empty χ⁻ part).
double step1_bound(const RadialKernel& k, double p);

/// Step II: Σ_{j≥0} q^{−jδ(p)} 𝒜(|k|)(j).
double step2_bound(const RadialKernel& k, double p);

/// Certified upper bound on ‖φ‖_{Cv_p(Z)} including the discarded negative
/// tail ℓ < −L and the quadrature aliasing.
double phi_cvp_upper(const RadialKernel& k, double p, const PhiSequence& phi, double hinf);

/// Certified upper bound for ‖k‖_{Cv_p(T)}. Throws ScopeError at p = 2.
double cvp_upper(const RadialKernel& k, double p);

/// Compression lower bound on B_R; needs R ≥ D + 2.
double cvp_lower(const RadialKernel& k, double p, int R, const NormEstimateOptions& options = {});

/// ‖k̃‖_∞ on the real line (the p = 2 norm), certified from above.
double spectral_sup(const RadialKernel& k);

/// Interval for ‖k̃_{δ(p)}‖_{M_p(T)} via the ZKernel (a_j q^{jδ(p)})_j.
struct SymbolNormReport {
  NormInterval interval;
  double weyl_residual = 0.0;
};
SymbolNormReport symbol_norm_report(const RadialKernel& k, double p);

struct TransferenceRecord {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

/// lhs = ‖f ∗ kχ⁻‖_p on the ball, rhs = ‖f‖_p Σ_m μ_m ‖row_m‖_{Cv_p(Z)} with
/// row_m(j) = q^{−j/p} k(2m − j), j ≤ −1. f must vanish outside B_{R−D}.
TransferenceRecord transference_check(const RadialKernel& k, double p, std::span<const cplx> f,
                                      const TreeBall& ball);

struct TheoremReport {
  int q = 0;
  double p = 0.0;
  int R = 0;
  std::string branch;  // "l1", "steps", "dual-steps"
  std::optional<double> step1_upper;
  std::optional<double> step2_upper;
  double total_upper = 0.0;
  double compression_lower = 0.0;
  std::string compression_witness;
  NormInterval symbol;
  double weyl_residual = 0.0;
  int grid_N = 0;
  std::string dictionary_version;
  double slack = 0.0;
  double ratio_lower_to_symbol_upper = 0.0;
  double ratio_upper_to_symbol_lower = 0.0;
  bool sandwich_ok = false;
};

/// Everything above for one (k, p, R). grid is the φ quadrature size.
TheoremReport theorem_report(const RadialKernel& k, double p, int R, int grid = 512,
                             const NormEstimateOptions& options = {});


struct TransferenceSuiteResult {
  int instances = 0;
  int passed = 0;
  double worst_ratio = 0.0;  // max lhs / rhs over instances with rhs > 0
};

/// Seeded random instances: q and p drawn from the given lists, D ∈ [1, 3],
/// R ∈ [D + 2, max_radius], complex kernel values and a random f on B_{R−D}.
TransferenceSuiteResult transference_suite(std::uint64_t seed, int instances, std::span<const int> qs,
                                           std::span<const double> ps, int max_radius);

}  // namespace treeharm
