#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace treeharm {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Raised when a request is outside the range covered by the multiplier
/// theorem (p = 2 for the theorem pipeline).
class ScopeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Branching data of the homogeneous tree: every vertex has q + 1 neighbours.
class TreeParams {
 public:
  explicit TreeParams(int q);

  int q() const noexcept { return q_; }
  double log_q() const noexcept { return log_q_; }
  /// Period 2π / log q of every spherical symbol.
  double tau() const noexcept { return 2.0 * kPi / log_q_; }
  /// c_G = q log q / (4π (q + 1)), the Plancherel constant.
  double plancherel_constant() const noexcept;

  /// q^x for real x.
  double pow(double x) const;
  /// q^z for complex z.
  cplx pow(cplx z) const;

  friend bool operator==(const TreeParams& a, const TreeParams& b) noexcept {
    return a.q_ == b.q_;
  }

 private:
  int q_;
  double log_q_;
};

/// δ(p) = |1/p − 1/2|.
double delta_of(double p);

/// p' = p / (p − 1), with 1' = ∞ and ∞' = 1.
double conjugate_exponent(double p);

/// min(p, p'): the representative of {p, p'} in [1, 2].
double canonical_exponent(double p);

/// Number of vertices at distance d from a fixed vertex: 1, (q+1) q^{d−1}.
std::int64_t sphere_size(int q, int d);

/// True iff n is a positive power of two.
bool is_power_of_two(std::int64_t n) noexcept;

/// %.17g formatting used by every CSV writer (lossless for doubles).
std::string format_double(double x);

}  // namespace treeharm
