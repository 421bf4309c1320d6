#include <boost/multiprecision/cpp_complex.hpp>

#include "doctest.h"
#include "support.hpp"
#include "treeharm/spherical.hpp"

using namespace treeharm;

namespace {

using Big = boost::multiprecision::cpp_complex_50;
using BigReal = boost::multiprecision::cpp_bin_float_50;

// c(z) in 50-digit arithmetic.
cplx oracle_c(int q, cplx z) {
  const BigReal qq(q);
  const BigReal sq = sqrt(qq);
  const Big zz(BigReal(z.real()), BigReal(z.imag()));
  const Big u = exp(Big(0, 1) * zz * log(qq));
  const Big c = sq / (qq + 1) * (sq * u - Big(1) / (sq * u)) / (u - Big(1) / u);
  return {static_cast<double>(c.real()), static_cast<double>(c.imag())};
}

}  // namespace

TEST_CASE("c-function") {
  for (int q : {2, 3, 7}) {
    const TreeParams P(q);
    CHECK(std::abs(c_function(P, P.tau() / 4) - 0.5) < 1e-14);
  }
  const TreeParams P(2);
  CHECK(std::abs(c_function(P, 1.0) - oracle_c(2, 1.0)) < 1e-14);
  CHECK_THROWS_AS(c_function(P, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(c_function(P, P.tau() / 2 + 1e-9), std::invalid_argument);
  testing::Gen g(31);
  for (int t = 0; t < 100; ++t) {
    const int q = std::array{2, 3, 5}[t % 3];
    const cplx z(g.uniform(-10, 10), g.uniform(-0.45, 0.45));
    const TreeParams Q(q);
    if (pole_distance(Q, z) < 1e-3) continue;
    CHECK(std::abs(c_function(Q, z) + c_function(Q, -z) - 1.0) < 1e-12);
    CHECK(std::abs(c_function(Q, z) - oracle_c(q, z)) < 1e-12 * std::max(1.0, std::abs(oracle_c(q, z))));
  }
}

TEST_CASE("shifted reciprocal") {
  const TreeParams P(2);
  CHECK(std::abs(c_inv_shifted(P, -P.tau() / 4, 0.0) - 2.0) < 1e-14);
  CHECK(std::abs(c_inv_shifted(P, 1e-9, 0.0)) < 1e-8);
  CHECK(std::abs(c_inv_shifted(P, 1.0, 0.25) - 1.0 / oracle_c(2, cplx(-1.0, -0.25))) < 1e-13);
  CHECK_THROWS_AS(c_inv_shifted(P, 0.0, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(c_inv_shifted(P, 0.0, 0.7), std::invalid_argument);
  for (int q : {2, 3}) {
    const TreeParams Q(q);
    for (double v : {-0.4, -1.0 / 6, 0.0, 0.25, 0.5}) {
      double dense = 0.0;
      for (int n = 0; n < 1 << 14; ++n) dense = std::max(dense, std::abs(c_inv_shifted(Q, Q.tau() * n / (1 << 14), v)));
      CHECK(c_inv_line_sup(Q, v) == doctest::Approx(dense).epsilon(1e-9));
    }
  }
}

TEST_CASE("spherical function values") {
  const TreeParams P(2);
  CHECK(std::abs(spherical_function(P, 0.0, 1) - 4.0 / (3.0 * std::sqrt(2.0))) < 1e-15);
  CHECK(std::abs(spherical_function(P, 1.0, 1) - 2.0 * std::sqrt(2.0) / 3.0 * std::cos(std::log(2.0))) < 1e-14);
  testing::Gen g(32);
  for (int t = 0; t < 20; ++t) CHECK(std::abs(spherical_function(P, g.complex_unit() * 3.0, 0) - 1.0) < 1e-14);
  // continuity across the near-lattice band
  for (double off : {2e-6, 5e-7, 0.0}) {
    for (int d : {1, 5, 12}) {
      const cplx a = spherical_function(P, P.tau() / 2 + off, d);
      const cplx b = spherical_function(P, P.tau() / 2 + 1e-3, d);
      CHECK(std::abs(a - b) < 1e-2);
    }
  }
  CHECK(std::abs(spherical_function(P, P.tau() / 2, 3) + (1 + 3.0 / 3) * std::pow(2.0, -1.5)) < 1e-15);
  CHECK_THROWS_AS(spherical_function(P, 0.3, -1), std::invalid_argument);
}

TEST_CASE("eigenfunction identity on balls") {
  testing::Gen g(33);
  for (int q : {2, 3}) {
    const TreeParams P(q);
    const TreeBall ball(P, 8);
    std::vector<cplx> zs;
    for (int t = 0; t < 40; ++t) zs.emplace_back(g.uniform(-8, 8), g.uniform(-0.5, 0.5));
    for (int n = -3; n <= 3; ++n) zs.emplace_back(n * P.tau() / 2, 0.0);
    zs.emplace_back(P.tau() / 2 + 3e-7, 1e-7);
    zs.emplace_back(0.0, 0.5);
    zs.emplace_back(0.0, -0.5);
    for (const cplx z : zs) {
      const cplx gamma = eigenvalue_gamma(P, z);
      for (Vertex x = 0; x < ball.prefix_size(7); x += 7) {
        cplx avg = ball.depth(x) > 0 ? spherical_function(P, z, ball.depth(ball.parent(x))) : cplx{};
        const Vertex c0 = ball.first_child(x);
        for (Vertex c = c0; c < c0 + ball.child_count(x); ++c) avg += spherical_function(P, z, ball.depth(c));
        avg /= q + 1.0;
        CHECK(std::abs(avg - gamma * spherical_function(P, z, ball.depth(x))) < 1e-10);
      }
    }
  }
}

TEST_CASE("spherical functions are bounded on the closed strip") {
  for (int q : {2, 3, 5}) {
    const TreeParams P(q);
    for (int a = 0; a <= 40; ++a) {
      for (int b = 0; b <= 20; ++b) {
        const cplx z(P.tau() * a / 40.0, -0.5 + b / 20.0);
        for (int d = 0; d <= 20; ++d) CHECK(std::abs(spherical_function(P, z, d)) <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("transform") {
  testing::Gen g(34);
  for (int q : {2, 3}) {
    const TreeParams P(q);
    CHECK(std::abs(spherical_transform(RadialKernel::delta(P), cplx(0.4, 0.2)) - 1.0) < 1e-15);
    const RadialKernel s1 = RadialKernel::sphere_indicator(P, 1);
    for (double s : {0.0, 0.3, 1.7, -2.2}) {
      CHECK(std::abs(spherical_transform(s1, s) - 2.0 * std::sqrt(double(q)) * std::cos(s * P.log_q())) < 1e-13);
    }
    const RadialKernel k = g.kernel(q, 5);
    for (int t = 0; t < 20; ++t) {
      const cplx z(g.uniform(-5, 5), g.uniform(-0.5, 0.5));
      const cplx v = spherical_transform(k, z);
      CHECK(std::abs(v - spherical_transform(k, -z)) < 1e-9 * std::max(1.0, std::abs(v)));
      CHECK(std::abs(v - spherical_transform(k, z + P.tau())) < 1e-9 * std::max(1.0, std::abs(v)));
    }
  }
}

TEST_CASE("inversion") {
  const TreeParams P(2);
  TorusSymbol one{P, 0.0, std::vector<cplx>(512, 1.0)};
  CHECK(std::abs(inverse_transform(one, 0) - 1.0) < 1e-9);
  for (int d = 1; d < 6; ++d) CHECK(std::abs(inverse_transform(one, d)) < 1e-9);
  TorusSymbol small{P, 0.0, std::vector<cplx>(32, 1.0)};
  CHECK_THROWS_AS(inverse_transform(small, 0), std::invalid_argument);
  TorusSymbol odd{P, 0.0, std::vector<cplx>(96, 1.0)};
  CHECK_THROWS_AS(inverse_transform(odd, 0), std::invalid_argument);
  TorusSymbol shifted{P, 0.1, std::vector<cplx>(64, 1.0)};
  CHECK_THROWS_AS(inverse_transform(shifted, 0), std::invalid_argument);

  const TreeParams Q(3);
  const RadialKernel s2 = RadialKernel::sphere_indicator(Q, 2);
  const TorusSymbol sym = sample_spherical_transform(s2, 512);
  for (int d = 0; d <= 4; ++d) CHECK(std::abs(inverse_transform(sym, d) - s2(d)) < 1e-9);
}

TEST_CASE("phi sequence") {
  const TreeParams P(2);
  const PhiSequence delta = phi_sequence(RadialKernel::delta(P), 1.0);
  CHECK(std::abs(delta.phi(0) - 1.0) < 1e-10);
  for (int d = 1; d <= delta.half_width; ++d) CHECK(std::abs(delta.phi(d)) < 1e-10);
  CHECK_THROWS_AS(phi_sequence(RadialKernel::delta(P), 2.0), ScopeError);
  CHECK_THROWS_AS(phi_sequence(RadialKernel::delta(P), 3.0), ScopeError);
  CHECK(default_phi_half_width(RadialKernel::delta(P), 1.0) == static_cast<int>(std::ceil(40.0 / std::log(2.0))));

  testing::Gen g(35);
  for (double p : {1.0, 4.0 / 3.0, 1.5, 1.8}) {
    const RadialKernel k = g.kernel(2 + (p > 1.4), 4);
    const PhiSequence phi = phi_sequence(k, p);
    CHECK(phi.grid_nodes >= 2 * phi.half_width + 2);
    for (int d = 0; d <= 4; ++d) CHECK(std::abs(k.params().pow(-d / p) * phi.phi(d) - k(d)) < 1e-8);
    for (int d = 5; d <= phi.half_width; ++d) CHECK(std::abs(phi.phi(d)) < 1e-8);
    if (p > 1.0) {
      const double h = phi_hinf_bound(k, p);
      const double two_delta = 2.0 * delta_of(p);
      for (int l = -phi.half_width; l < 0; ++l)
        CHECK(std::abs(phi.phi(l)) <= h * k.params().pow(two_delta * l) * (1 + 1e-9) + 1e-13);
    }
  }
}
