#include "doctest.h"
#include "support.hpp"
#include "treeharm/abel.hpp"
#include "treeharm/horocycle.hpp"
#include "treeharm/spherical.hpp"

using namespace treeharm;

TEST_CASE("forward examples") {
  for (int q : {2, 3, 5}) {
    const TreeParams P(q);
    const AbelSequence d = abel_forward(RadialKernel::delta(P));
    CHECK(d.radius() == 0);
    CHECK(d(0) == cplx(1.0));
    const AbelSequence s = abel_forward(RadialKernel::sphere_indicator(P, 1));
    CHECK(std::abs(s(1) - std::sqrt(double(q))) < 1e-14);
    CHECK(s(-1) == s(1));
    CHECK(s(0) == cplx(0.0));
  }
}

TEST_CASE("forward is even, linear, positive and triangular") {
  testing::Gen g(21);
  for (int t = 0; t < 30; ++t) {
    const int q = g.range(2, 4);
    const RadialKernel k = g.kernel(q, g.range(0, 7));
    const AbelSequence a = abel_forward(k);
    CHECK(a.weyl_residual() == 0.0);
    CHECK(a.is_even());
    const RadialKernel k2 = g.kernel(q, k.support_radius());
    const cplx c = g.complex_unit();
    std::vector<cplx> sum(k.values().begin(), k.values().end());
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += c * k2(static_cast<int>(i));
    const AbelSequence lin = abel_forward(RadialKernel(k.params(), sum));
    const AbelSequence a2 = abel_forward(k2);
    for (int j = -a.radius(); j <= a.radius(); ++j) CHECK(std::abs(lin(j) - a(j) - c * a2(j)) < 1e-10);
    const AbelSequence pos = abel_forward(g.kernel(q, 5, true));
    for (int j = -5; j <= 5; ++j) CHECK(pos(j).real() >= 0.0);
  }
  // 𝒜k(j) ignores k(d) for d < |j| and d of the other parity.
  const TreeParams P(2);
  const AbelSequence base = abel_forward(RadialKernel(P, {1, 2, 3, 4, 5, 6}));
  const AbelSequence moved = abel_forward(RadialKernel(P, {9, 2, 3, -4, 5, 0}));
  CHECK(base(5) == moved(5) + P.pow(2.5) * 6.0);
  CHECK(base(4) == moved(4));
  CHECK(base(2) == moved(2));
}

TEST_CASE("inverse") {
  const TreeParams P(2);
  const RadialKernel d = abel_inverse(AbelSequence(P, {1.0}));
  CHECK(d(0) == cplx(1.0));
  const RadialKernel s = abel_inverse(AbelSequence(P, {std::sqrt(2.0), 0.0, std::sqrt(2.0)}));
  CHECK(std::abs(s(0)) < 1e-15);
  CHECK(std::abs(s(1) - 1.0) < 1e-15);
  CHECK_THROWS_AS(abel_inverse(AbelSequence(P, {1.0, 0.0, 2.0})), std::invalid_argument);
  CHECK_THROWS_AS(AbelSequence(P, {1.0, 2.0}), std::invalid_argument);
  testing::Gen g(22);
  for (int t = 0; t < 50; ++t) {
    const RadialKernel k = g.kernel(g.range(2, 4), g.range(0, 8));
    const RadialKernel back = abel_inverse(abel_forward(k));
    for (int i = 0; i <= k.support_radius(); ++i) CHECK(std::abs(back(i) - k(i)) < 1e-12 * (1 + std::abs(k(i))));
  }
}

TEST_CASE("exact brute force over the ball equals the closed form") {
  testing::Gen g(23);
  for (int q : {2, 3}) {
    const TreeBall ball(TreeParams(q), 9);
    for (int t = 0; t < 6; ++t) {
      const int D = g.range(0, 4);
      std::vector<Rational> k(D + 1);
      for (auto& v : k) v = g.small_rational();
      for (int j = -(9 - D); j <= 9 - D; ++j) {
        const QuadraticSurd brute = abel_bruteforce_exact(ball, k, j);
        CHECK(brute == abel_forward_exact(q, k, j));
        CHECK(brute == abel_bruteforce_exact(ball, k, -j));
      }
    }
  }
}

TEST_CASE("floating brute force") {
  const TreeParams P(2);
  const TreeBall ball(P, 6);
  CHECK(abel_bruteforce(ball, RadialKernel::delta(P), 0) == cplx(1.0));
  CHECK(abel_bruteforce(ball, RadialKernel::delta(P), 2) == cplx(0.0));
  CHECK(abel_bruteforce(ball, RadialKernel::delta(P), -3) == cplx(0.0));
  testing::Gen g(24);
  const RadialKernel k = g.kernel(2, 3);
  const AbelSequence a = abel_forward(k);
  for (int j = -3; j <= 3; ++j) CHECK(std::abs(abel_bruteforce(ball, k, j) - a(j)) < 1e-12);
  CHECK_THROWS_AS(abel_bruteforce(ball, k, 4), std::out_of_range);
}

TEST_CASE("factorization through the transform on Z") {
  testing::Gen g(25);
  for (int t = 0; t < 50; ++t) {
    const RadialKernel k = g.kernel(g.range(2, 3), g.range(0, 6));
    const TorusSymbol via_abel = sample_fourier_z(abel_forward(k).as_zkernel(), 64);
    for (int n = 0; n < 64; ++n) {
      const cplx direct = spherical_transform(k, via_abel.node(n));
      CHECK(std::abs(direct - via_abel.samples[n]) < 1e-10);
    }
  }
}

TEST_CASE("Q_p moments") {
  for (int q : {2, 3, 5}) {
    const TreeParams P(q);
    CHECK(qp_moment(P, 1.0, 0) == doctest::Approx((q + 1.0) / q).epsilon(1e-13));
    // closed form of Σ_{m≥1} 2m (1 − 1/q) r^m with r = q^{1 − 2/p}
    const double r = P.pow(1.0 - 2.0 / 1.5);
    CHECK(qp_moment(P, 1.5, 1) == doctest::Approx(2.0 * (1.0 - 1.0 / q) * r / ((1 - r) * (1 - r))).epsilon(1e-12));
  }
  // reversed summation order in long double
  const TreeParams P(2);
  long double rev = 0.0L;
  for (int m = 200; m >= 1; --m) rev += 2.0L * m * (std::pow(2.0L, m) - std::pow(2.0L, m - 1)) * std::pow(2.0L, -2.0L * m);
  CHECK(std::abs(qp_moment(P, 1.0, 1) - static_cast<double>(rev)) < 1e-12);
  // census cross-check: shell m holds q^m − q^{m−1} vertices of one horocycle cell
  long double partial = 1.0L;
  const HorocycleMeasure mu(P);
  for (int m = 1; m <= 20; ++m) partial += static_cast<long double>(mu.shell_mass(m)) * std::pow(2.0L, -2.0L * m);
  CHECK(std::abs(qp_moment(P, 1.0, 0) - static_cast<double>(partial)) < 1e-6);
  CHECK_THROWS_AS(qp_moment(P, 2.0, 0), std::domain_error);
  CHECK_THROWS_AS(qp_moment(P, 3.0, 1), std::domain_error);
  CHECK(qp_moment(P, 1.9, 2) > qp_moment(P, 1.5, 2));
}
