#include "treeharm/abel.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "treeharm/horocycle.hpp"

namespace treeharm {

AbelSequence::AbelSequence(TreeParams params, std::vector<cplx> coefficients)
    : params_(params), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() % 2 != 1) throw std::invalid_argument("Abel sequence needs 2D + 1 coefficients");
}

double AbelSequence::weyl_residual() const {
  double r = 0.0;
  for (int j = 1; j <= radius(); ++j) r = std::max(r, std::abs((*this)(j) - (*this)(-j)));
  return r;
}

AbelSequence abel_forward(const RadialKernel& k) {
  const int D = k.support_radius();
  const double q = k.q();
  std::vector<cplx> a(2 * D + 1);
  for (int j = 0; j <= D; ++j) {
    cplx tail{};
    double qi = 1.0;
    for (int i = 1; j + 2 * i <= D; ++i) {
      qi *= q;
      tail += qi * k(j + 2 * i);
    }
    const cplx v = k.params().pow(0.5 * j) * (k(j) + (1.0 - 1.0 / q) * tail);
    a[D + j] = v;
    a[D - j] = v;
  }
  return {k.params(), std::move(a)};
}

RadialKernel abel_inverse(const AbelSequence& a) {
  const int D = a.radius();
  for (int j = 1; j <= D; ++j) {
    if (a(j) != a(-j)) {
      throw std::invalid_argument("Abel sequence is not even at j = " + std::to_string(j));
    }
  }
  const double q = a.params().q();
  std::vector<cplx> k(D + 1);
  for (int d = D; d >= 0; --d) {
    cplx tail{};
    double qi = 1.0;
    for (int i = 1; d + 2 * i <= D; ++i) {
      qi *= q;
      tail += qi * k[d + 2 * i];
    }
    k[d] = a(d) * a.params().pow(-0.5 * d) - (1.0 - 1.0 / q) * tail;
  }
  return {a.params(), std::move(k)};
}

namespace {

void require_abel_range(const TreeBall& ball, int D, int j) {
  if (std::abs(j) + D > ball.radius()) {
    throw std::out_of_range("Abel brute force needs |j| + D <= R, got |j| = " + std::to_string(std::abs(j)) +
                            ", D = " + std::to_string(D) + ", R = " + std::to_string(ball.radius()));
  }
}

// Visits x ∈ H_j ∩ B_D, checking the max-law per vertex and the cell sizes
// predicted by μ once the loop is done.
template <typename Fn>
void for_each_horocycle_vertex(const TreeBall& ball, int j, int D, Fn&& fn) {
  const HorocycleMeasure mu(ball.params());
  std::map<int, std::int64_t> cells;
  const Vertex n = ball.prefix_size(D);
  for (Vertex x = 0; x < n; ++x) {
    if (ball.height(x) != j) continue;
    const int m = ball.merge_height(x);
    if (ball.depth(x) != HorocycleMeasure::cell_distance(j, m)) {
      throw std::logic_error("max-law violated at vertex " + std::to_string(x));
    }
    ++cells[m];
    fn(x);
  }
  for (int m = 0; m <= D; ++m) {
    if (HorocycleMeasure::cell_distance(j, m) > D) continue;
    auto it = cells.find(m);
    const std::int64_t seen = it == cells.end() ? 0 : it->second;
    if (seen != mu.cell_vertex_count(j, m)) {
      throw std::logic_error("horocycle cell (" + std::to_string(j) + ", " + std::to_string(m) +
                             ") disagrees with the shell masses");
    }
  }
}

Rational rational_pow(int q, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= q;
  return r;
}

// q^{j/2} · c in surd form.
QuadraticSurd times_half_power(int q, int j, Rational c) {
  const int n = std::abs(j);
  if (j >= 0) return {c * rational_pow(q, n / 2), n % 2};
  // q^{−n/2} = q^{−⌈n/2⌉} (√q)^{n mod 2}
  return {c / rational_pow(q, (n + 1) / 2), n % 2};
}

}  // namespace

cplx abel_bruteforce(const TreeBall& ball, const RadialKernel& k, int j) {
  if (!(k.params() == ball.params())) throw std::invalid_argument("kernel and ball use different q");
  const int D = k.support_radius();
  require_abel_range(ball, D, j);
  cplx sum{};
  for_each_horocycle_vertex(ball, j, D, [&](Vertex x) { sum += k(ball.depth(x)); });
  return ball.params().pow(0.5 * j) * sum;
}

QuadraticSurd abel_forward_exact(int q, std::span<const Rational> k, int j) {
  const int D = static_cast<int>(k.size()) - 1;
  const int a = std::abs(j);
  if (a > D) return {Rational(0), 0};
  Rational tail = 0;
  Rational qi = 1;
  for (int i = 1; a + 2 * i <= D; ++i) {
    qi *= q;
    tail += qi * k[a + 2 * i];
  }
  const Rational inner = k[a] + (Rational(1) - Rational(1, q)) * tail;
  QuadraticSurd s = times_half_power(q, a, inner);
  if (s.coeff == 0) s.sqrt_power = 0;
  return s;
}

QuadraticSurd abel_bruteforce_exact(const TreeBall& ball, std::span<const Rational> k, int j) {
  const int D = static_cast<int>(k.size()) - 1;
  require_abel_range(ball, D, j);
  Rational sum = 0;
  for_each_horocycle_vertex(ball, j, D, [&](Vertex x) { sum += k[ball.depth(x)]; });
  QuadraticSurd s = times_half_power(ball.q(), j, sum);
  if (s.coeff == 0) s.sqrt_power = 0;
  return s;
}

double qp_moment(const TreeParams& params, double p, int ell) {
  if (ell < 0) throw std::invalid_argument("moment order must be >= 0");
  if (!(p >= 1.0)) throw std::invalid_argument("exponent p must be >= 1");
  if (p >= 2.0) {
    throw std::domain_error("Q_p moment diverges for p >= 2: shell terms behave like q^{m(1 - 2/p)} >= 1");
  }
  const double ratio = params.pow(1.0 - 2.0 / p);
  const double w = 1.0 - 1.0 / params.q();
  double sum = ell == 0 ? 1.0 : 0.0;
  double geo = 1.0;
  constexpr long kMaxShells = 100'000'000;
  for (long m = 1; m <= kMaxShells; ++m) {
    geo *= ratio;
    sum += std::pow(2.0 * m, ell) * w * geo;
    // Terms beyond m shrink at least by ρ per step once ρ < 1.
    const double rho = std::pow((m + 2.0) / (m + 1.0), ell) * ratio;
    if (rho < 1.0) {
      const double next = std::pow(2.0 * (m + 1), ell) * w * geo * ratio;
      if (next / (1.0 - rho) <= 1e-14 * sum) return sum;
    }
  }
  throw std::runtime_error("Q_p moment series did not reach its tail tolerance");
}

}  // namespace treeharm
