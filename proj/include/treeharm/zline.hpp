#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treeharm/params.hpp"

namespace treeharm {

/// Finitely supported two-sided sequence F(d), d_min ≤ d ≤ d_max. An empty
/// value list is the zero kernel.
class ZKernel {
 public:
  ZKernel(TreeParams params, int d_min, std::vector<cplx> values);

  static ZKernel delta(TreeParams params, int d = 0);
  static ZKernel zero(TreeParams params) { return {params, 0, {}}; }

  const TreeParams& params() const noexcept { return params_; }
  int d_min() const noexcept { return d_min_; }
  int d_max() const noexcept { return d_min_ + width() - 1; }
  int width() const noexcept { return static_cast<int>(values_.size()); }
  bool empty() const noexcept { return values_.empty(); }
  const std::vector<cplx>& values() const noexcept { return values_; }
  cplx operator()(int d) const noexcept {
    const int i = d - d_min_;
    return (i >= 0 && i < width()) ? values_[i] : cplx{};
  }

  double l1_norm() const;
  ZKernel shifted(int t) const { return {params_, d_min_ + t, values_}; }
  /// Drops zero entries at both ends.
  ZKernel trimmed() const;
  /// d ↦ F(d) q^{d v}: coefficients of s ↦ ℱF(s + i v).
  ZKernel line_coefficients(double v) const;

 private:
  TreeParams params_;
  int d_min_;
  std::vector<cplx> values_;
};

/// Samples m(s_n), s_n = −τ/2 + nτ/N, of a τ-periodic function along the
/// horizontal line Im z = shift.
struct TorusSymbol {
  TreeParams params;
  double shift = 0.0;
  std::vector<cplx> samples;

  int size() const noexcept { return static_cast<int>(samples.size()); }
  double node(int n) const { return -0.5 * params.tau() + n * params.tau() / size(); }
  /// Throws unless N is a power of two and at least min_nodes.
  void validate(int min_nodes) const;
};

/// Σ_ε = {−ε < Im z < 0}.
struct StripDomain {
  explicit StripDomain(double eps);
  double epsilon;
};

struct NormInterval {
  double lower = 0.0;
  double upper = 0.0;
  std::string lower_method;
  std::string upper_method;
};

/// ℱF(s) = Σ_d F(d) q^{−ids}, for complex s.
cplx fourier_z(const ZKernel& F, cplx s);

/// ℱF sampled on the N-node grid along Im z = shift.
TorusSymbol sample_fourier_z(const ZKernel& F, int N, double shift = 0.0);

/// F(d) = (1/τ) ∫_T m(s) q^{ids} ds by the trapezoid rule; exact for trig
/// polynomials of degree < N/2. Requires N ≥ 64 and a symbol on Im z = 0.
cplx inverse_fourier_z(const TorusSymbol& symbol, int d);

/// sup_s |ℱF(s + i v)|: `attained` is a value actually taken (grid plus
/// Newton refinement, minus the rounding bound), `upper` adds the
/// curvature slack h²/8 · max|g''| for g = |ℱF|² between grid nodes.
struct SupEstimate {
  double attained = 0.0;
  double upper = 0.0;
  double argmax = 0.0;
  int grid_nodes = 0;
};
SupEstimate symbol_sup(const ZKernel& F, double v = 0.0);

/// Certified upper bound for ‖F‖_{Cv_p(Z)}: ℓ¹ at p ∈ {1, ∞}, the symbol sup
/// at p = 2, Riesz–Thorin interpolation ‖F‖₁^{|2/p−1|} sup^{1−|2/p−1|} else.
double cvp_upper(const ZKernel& F, double p);

/// Trial dictionary version tag; bump when the dictionary changes.
inline constexpr const char* kZDictionaryVersion = "zdict-1";

/// Certified interval for ‖F‖_{Cv_p(Z)} = ‖ℱF‖_{M_p(T)}.
NormInterval cvp_interval(const ZKernel& F, double p);

/// ‖ℱF‖_{H^∞(Σ_ε)}: the larger of the certified sups on Im z = 0 and
/// Im z = −ε (maximum principle).
double hinf_strip_norm(const ZKernel& F, const StripDomain& strip);
double hinf_strip_norm(const ZKernel& F, double eps);

/// Right-hand side of the truncation estimate with its two inputs cached:
/// ‖F‖_{Cv_p} + (1/(q^ε − 1) + J) ‖ℱF‖_{H^∞(Σ_ε)}.
struct TruncationTerms {
  double cvp_upper = 0.0;
  double hinf = 0.0;
  double q_eps = 0.0;  // q^ε
  double bound(int J) const;
};
TruncationTerms truncation_terms(const ZKernel& F, double eps, double p);

/// Certified upper bound for ‖F 1_{[J,∞)}‖_{Cv_p(Z)}, J ≥ 0.
double truncation_bound(const ZKernel& F, int J, double eps, double p);

/// F 1_{[J,∞)}.
ZKernel truncate(const ZKernel& F, int J);

/// Full convolution f ∗ F of a window vector f (index 0 ↔ F's d_min shift).
std::vector<cplx> convolve_z(const std::vector<cplx>& f, const ZKernel& F);


/// j ↦ 1/j on 1 ≤ j ≤ N: the truncation φ 1_{[1,∞)} of the discrete Hilbert
/// kernel φ(j) = 1/j, |j| ≤ N.
ZKernel harmonic_truncation(TreeParams params, int N);

}  // namespace treeharm
