#pragma once

#include <vector>

#include "treeharm/census.hpp"
#include "treeharm/radial_kernel.hpp"
#include "treeharm/tree_ball.hpp"
#include "treeharm/zline.hpp"

namespace treeharm {

/// Two-sided sequence a_j, |j| ≤ D, stored from j = −D. Even for every
/// kernel, so it is also the coefficient list of the symbol
/// k̃(z) = Σ_j a_j q^{−ijz}.
class AbelSequence {
 public:
  AbelSequence(TreeParams params, std::vector<cplx> coefficients);

  const TreeParams& params() const noexcept { return params_; }
  int radius() const noexcept { return static_cast<int>(coeffs_.size() / 2); }
  cplx operator()(int j) const noexcept {
    const int i = j + radius();
    return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[i] : cplx{};
  }
  const std::vector<cplx>& coefficients() const noexcept { return coeffs_; }

  /// max_j |a_j − a_{−j}|.
  double weyl_residual() const;
  bool is_even() const { return weyl_residual() == 0.0; }

  /// (a_j)_j as a kernel on Z; its Fourier transform is k̃.
  ZKernel as_zkernel() const { return {params_, -radius(), coeffs_}; }
  /// (a_j q^{jv})_j: coefficients of s ↦ k̃(s + iv).
  ZKernel shifted_symbol(double v) const { return as_zkernel().line_coefficients(v); }

 private:
  TreeParams params_;
  std::vector<cplx> coeffs_;
};

/// a_j = q^{|j|/2} [k(|j|) + (1 − 1/q) Σ_{i≥1} q^i k(|j| + 2i)].
AbelSequence abel_forward(const RadialKernel& k);

/// Inverse of abel_forward by back-substitution from d = D down to 0.
/// Throws std::invalid_argument unless a is exactly even.
RadialKernel abel_inverse(const AbelSequence& a);

/// q^{j/2} Σ_{x ∈ H_j} k(|x|) summed over the horocycle of height j in the
/// ball, which equals q^{−j/2} Σ_m μ_m k(max(2m − j, j)). The max-law and
/// the cell counts implied by μ are checked on every visited vertex
/// (std::logic_error on disagreement). Requires |j| + D ≤ R.
cplx abel_bruteforce(const TreeBall& ball, const RadialKernel& k, int j);

/// Exact value coeff · (√q)^{sqrt_power}, sqrt_power ∈ {0, 1}.
struct QuadraticSurd {
  Rational coeff;
  int sqrt_power = 0;
  friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;
};

/// Exact versions for rational kernels k(0..D).
QuadraticSurd abel_forward_exact(int q, std::span<const Rational> k, int j);
QuadraticSurd abel_bruteforce_exact(const TreeBall& ball, std::span<const Rational> k, int j);

/// ∫_N |n·o|^ℓ Q_p dμ = [ℓ = 0] + Σ_{m≥1} (2m)^ℓ (q^m − q^{m−1}) q^{−2m/p},
/// summed until the certified geometric tail is below 1e−14 of the sum.
/// Throws std::domain_error for p ≥ 2, where the series diverges.
double qp_moment(const TreeParams& params, double p, int ell);

}  // namespace treeharm
