#pragma once

#include <span>
#include <vector>

#include "treeharm/params.hpp"

namespace treeharm {

/// Finitely supported radial function d ↦ k(d) on the tree, d = 0..D.
class RadialKernel {
 public:
  RadialKernel(TreeParams params, std::vector<cplx> values);

  static RadialKernel delta(TreeParams params);
  static RadialKernel sphere_indicator(TreeParams params, int radius);
  static RadialKernel ball_indicator(TreeParams params, int radius);

  const TreeParams& params() const noexcept { return params_; }
  int q() const noexcept { return params_.q(); }
  /// Support radius D (index of the last stored value).
  int support_radius() const noexcept { return static_cast<int>(values_.size()) - 1; }

  /// k(d); zero outside 0..D.
  cplx operator()(int d) const noexcept {
    return (d >= 0 && d < static_cast<int>(values_.size())) ? values_[d] : cplx{};
  }
  std::span<const cplx> values() const noexcept { return values_; }

  /// ‖k‖_{ℓ¹(T)} = |k(0)| + Σ_d (q+1) q^{d−1} |k(d)|.
  double l1_norm() const;
  bool is_real() const noexcept;
  /// True iff k(d) = 0 for every d ≥ 1.
  bool is_point_mass() const noexcept;

  RadialKernel scaled(cplx c) const;
  RadialKernel conj() const;
  RadialKernel abs() const;

 private:
  TreeParams params_;
  std::vector<cplx> values_;
};

}  // namespace treeharm
