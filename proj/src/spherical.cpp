#include "treeharm/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace treeharm {

namespace {

constexpr double kPoleReject = 1e-8;
constexpr double kExceptionalBand = 1e-6;

void require_phi_exponent(double p) {
  if (!(p >= 1.0 && p < 2.0)) {
    throw ScopeError("φ sequence needs p in [1, 2), got " + format_double(p) +
                     "; for p > 2 use the conjugate exponent");
  }
}

// Nearest lattice index n for z ≈ nτ/2.
double nearest_lattice(const TreeParams& params, cplx z) { return std::round(z.real() / (0.5 * params.tau())); }

}  // namespace

double pole_distance(const TreeParams& params, cplx z) {
  const double n = nearest_lattice(params, z);
  return std::abs(z - cplx(n * 0.5 * params.tau(), 0.0));
}

cplx c_function(const TreeParams& params, cplx z) {
  const double dist = pole_distance(params, z);
  if (dist < kPoleReject) {
    throw std::invalid_argument("c(z) requested at distance " + format_double(dist) +
                                " from its pole lattice (tau/2)Z");
  }
  const double sq = std::sqrt(static_cast<double>(params.q()));
  const cplx u = params.pow(cplx(0.0, 1.0) * z);
  return (sq / (params.q() + 1.0)) * (sq * u - 1.0 / (sq * u)) / (u - 1.0 / u);
}

cplx c_inv_shifted(const TreeParams& params, double s, double v) {
  if (!(v > -0.5 && v <= 0.5)) {
    throw std::invalid_argument("line shift v must lie in (-1/2, 1/2], got " + format_double(v));
  }
  const double sq = std::sqrt(static_cast<double>(params.q()));
  // w = q^{iz} at z = −s − iv.
  const cplx w = params.pow(v) * std::polar(1.0, -s * params.log_q());
  return ((params.q() + 1.0) / sq) * (w - 1.0 / w) / (sq * w - 1.0 / (sq * w));
}

double c_inv_line_sup(const TreeParams& params, double v) {
  if (!(v > -0.5 && v <= 0.5)) {
    throw std::invalid_argument("line shift v must lie in (-1/2, 1/2], got " + format_double(v));
  }
  const double sq = std::sqrt(static_cast<double>(params.q()));
  const double r = params.pow(-2.0 * v);
  const double at_minus = (1.0 + r) / (sq + r / sq);
  const double at_plus = std::abs(1.0 - r) / std::abs(sq - r / sq);
  return ((params.q() + 1.0) / sq) * std::max(at_minus, at_plus);
}

cplx eigenvalue_gamma(const TreeParams& params, cplx z) {
  const double sq = std::sqrt(static_cast<double>(params.q()));
  const cplx u = params.pow(cplx(0.0, 1.0) * z);
  return (sq / (params.q() + 1.0)) * (u + 1.0 / u);
}

cplx spherical_function(const TreeParams& params, cplx z, int d) {
  if (d < 0) throw std::invalid_argument("spherical function needs d >= 0");
  const double q = params.q();
  const double dist = pole_distance(params, z);
  if (dist == 0.0) {
    const double n = nearest_lattice(params, z);
    const double sign = (std::fmod(std::abs(n), 2.0) == 1.0 && d % 2 == 1) ? -1.0 : 1.0;
    return sign * (1.0 + (q - 1.0) / (q + 1.0) * d) * params.pow(-0.5 * d);
  }
  if (dist < kExceptionalBand) {
    // q^{−d/2} (√q/(q+1)) [√q S_{d+1}(u) − S_{d−1}(u)/√q], S_n(u) = Σ_k u^{n−1−2k}.
    const cplx u = params.pow(cplx(0.0, 1.0) * z);
    const cplx u2 = 1.0 / (u * u);
    auto S = [&](int n) {
      if (n == 0) return cplx{};
      if (n < 0) return -1.0 * cplx(1.0);  // only n = −1 occurs
      cplx term = std::pow(u, n - 1), sum{};
      for (int k = 0; k < n; ++k, term *= u2) sum += term;
      return sum;
    };
    const double sq = std::sqrt(q);
    return params.pow(-0.5 * d) * (sq / (q + 1.0)) * (sq * S(d + 1) - S(d - 1) / sq);
  }
  const cplx iz(0.0, 1.0);
  return c_function(params, z) * params.pow((iz * z - 0.5) * static_cast<double>(d)) +
         c_function(params, -z) * params.pow((-iz * z - 0.5) * static_cast<double>(d));
}

cplx spherical_transform(const RadialKernel& k, cplx z) {
  cplx sum = k(0);
  for (int d = 1; d <= k.support_radius(); ++d) {
    if (k(d) == cplx{}) continue;
    sum += static_cast<double>(sphere_size(k.q(), d)) * k(d) * spherical_function(k.params(), z, d);
  }
  return sum;
}

TorusSymbol sample_spherical_transform(const RadialKernel& k, int N, double shift) {
  if (N < 1) throw std::invalid_argument("grid size must be positive");
  TorusSymbol sym{k.params(), shift, std::vector<cplx>(N)};
  for (int n = 0; n < N; ++n) sym.samples[n] = spherical_transform(k, cplx(sym.node(n), shift));
  return sym;
}

cplx inverse_transform(const TorusSymbol& symbol, int d) {
  symbol.validate(64);
  if (symbol.shift != 0.0) throw std::invalid_argument("inversion needs a symbol on the real line");
  if (d < 0) throw std::invalid_argument("inversion needs d >= 0");
  const TreeParams& P = symbol.params;
  cplx sum{};
  for (int n = 0; n < symbol.size(); ++n) {
    const double s = symbol.node(n);
    sum += symbol.samples[n] * c_inv_shifted(P, s, 0.0) * std::polar(1.0, s * d * P.log_q());
  }
  const double h = P.tau() / symbol.size();
  return 2.0 * P.plancherel_constant() * P.pow(-0.5 * d) * h * sum;
}

int default_phi_half_width(const RadialKernel& k, double p) {
  require_phi_exponent(p);
  const double delta = delta_of(p);
  return k.support_radius() + static_cast<int>(std::ceil(40.0 / (2.0 * delta * k.params().log_q())));
}

PhiSequence phi_sequence(const RadialKernel& k, double p, int N, int half_width) {
  require_phi_exponent(p);
  if (N < 64 || !is_power_of_two(N)) {
    throw std::invalid_argument("φ grid needs a power-of-two N >= 64, got " + std::to_string(N));
  }
  const int L = half_width < 0 ? default_phi_half_width(k, p) : half_width;
  while (N < 2 * L + 2) N *= 2;
  const TreeParams& P = k.params();
  const double delta = delta_of(p);
  const TorusSymbol shifted = sample_fourier_z(abel_forward(k).as_zkernel(), N, delta);

  std::vector<cplx> g(N);
  for (int n = 0; n < N; ++n) g[n] = shifted.samples[n] * c_inv_shifted(P, shifted.node(n), delta);

  const double scale = 2.0 * P.plancherel_constant() * P.tau() / N;
  std::vector<cplx> phi(2 * L + 1);
  for (int l = -L; l <= L; ++l) {
    cplx sum{};
    for (int n = 0; n < N; ++n) sum += g[n] * std::polar(1.0, shifted.node(n) * l * P.log_q());
    phi[l + L] = scale * sum;
  }
  return {ZKernel(P, -L, std::move(phi)), p, N, L};
}

double phi_hinf_bound(const RadialKernel& k, double p) {
  require_phi_exponent(p);
  const TreeParams& P = k.params();
  const double delta = delta_of(p);
  const ZKernel a = abel_forward(k).as_zkernel();
  double best = 0.0;
  for (double v : {delta, -delta}) {
    best = std::max(best, symbol_sup(a, v).upper * c_inv_line_sup(P, v));
  }
  return 2.0 * P.plancherel_constant() * P.tau() * best * (1.0 + 8.0 * std::numeric_limits<double>::epsilon());
}

}  // namespace treeharm
