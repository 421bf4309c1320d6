#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "treeharm/radial_kernel.hpp"
#include "treeharm/tree_ball.hpp"

namespace treeharm {

/// Ball plus radial kernel; the matrix A[x][y] = k(d(x, y)) is never formed
/// and is only reachable through products.
class OperatorHandle {
 public:
  OperatorHandle(const TreeBall& ball, RadialKernel kernel, int threads = 1);

  const TreeBall& ball() const noexcept { return *ball_; }
  const RadialKernel& kernel() const noexcept { return kernel_; }
  /// Radius R − D of the interior window.
  int window_radius() const noexcept { return ball_->radius() - kernel_.support_radius(); }

  /// out = A in on the sub-ball B_r (vectors of length prefix_size(r)).
  /// Exact at x whenever in vanishes outside B_{r−D} or |x| ≤ r − D.
  void apply(std::span<const cplx> in, std::span<cplx> out, int r) const;
  void apply(std::span<const double> in, std::span<double> out, int r) const;

 private:
  template <typename T>
  void apply_impl(std::span<const T> in, std::span<T> out, int r, std::span<const T> coeffs) const;

  const TreeBall* ball_;
  RadialKernel kernel_;
  std::vector<double> real_coeffs_;
  int threads_;
};

/// (f ∗ k)(x) = Σ_y f(y) k(d(x, y)), by the sphere recurrence
/// S_{r+1} = A S_r − q S_{r−1} (S_2 = A S_1 − (q+1) S_0), cost O(V D q).
/// Only the interior window |x| ≤ R − D is certified for general f; the
/// whole ball is exact when f vanishes outside that window.
std::vector<cplx> convolve(const TreeBall& ball, const RadialKernel& k, std::span<const cplx> f,
                           int threads = 1);

/// Which part of the horocyclic split k = kχ⁻ + kχ⁺ to apply.
enum class HeightPart { Negative, NonNegative };

/// Σ_y f(y) k(d(x, y)) restricted to pairs with h(x) − h(y) ≤ −1 (Negative)
/// or ≥ 0 (NonNegative): convolution on NA with kχ^∓. f must vanish outside
/// the interior window; the result is then exact on the whole ball.
std::vector<cplx> convolve_height_part(const TreeBall& ball, const RadialKernel& k,
                                       std::span<const cplx> f, HeightPart part);

double lp_norm(std::span<const cplx> v, double p);
double lp_norm(std::span<const double> v, double p);

struct NormEstimateOptions {
  int max_iterations = 200;
  double relative_tolerance = 1e-10;
  int random_trials = 16;
  std::uint64_t seed = 0x7eed5eedULL;
  int threads = 1;
};

struct LowerBoundResult {
  double value = 0.0;
  std::string witness;  // which trial realised the value
  int radius = 0;       // sub-ball on which it was realised
  int iterations = 0;   // duality-map iterations used at the full radius
};

/// Certified lower bound for ‖k‖_{Cv_p(T)}: the best ratio ‖f ∗ k‖/‖f‖ over
/// trial vectors supported in the interior window, where the numerator is
/// the exact tree output. Every trial is scored in both ℓ^p and ℓ^{p'}
/// (‖k‖_{Cv_p} = ‖k‖_{Cv_{p'}} because A is symmetric), so the result is
/// the same for p and p'. Trials from every sub-ball B_r, D ≤ r ≤ R, are
/// included, which makes the bound nondecreasing in R.
LowerBoundResult opnorm_lower_detailed(const TreeBall& ball, const RadialKernel& k, double p,
                                       const NormEstimateOptions& options = {});

double opnorm_lower(const TreeBall& ball, const RadialKernel& k, double p,
                    const NormEstimateOptions& options = {});

}  // namespace treeharm
