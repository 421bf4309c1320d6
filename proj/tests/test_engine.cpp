#include "doctest.h"
#include "support.hpp"
#include "treeharm/engine.hpp"
#include "treeharm/io.hpp"

#include <fstream>

#include "json.hpp"

using namespace treeharm;

TEST_CASE("group weights") {
  const GroupWeight w(TreeParams(2), 1.5);
  CHECK(w.p_conj == doctest::Approx(3.0));
  CHECK(w.delta == doctest::Approx(delta_of(3.0)));
  CHECK(w.modular(2) * w.modular(-5) == doctest::Approx(w.modular(-3)));
  CHECK(w.conjugation(1) == doctest::Approx(0.5));
  CHECK(GroupWeight(TreeParams(2), 1.0).delta == 0.5);
}

TEST_CASE("split kernel") {
  const TreeParams P(2);
  const SplitKernel d = split_kernel(RadialKernel::delta(P));
  for (int m = 0; m < 5; ++m) {
    CHECK(d.negative.row(m).empty());
    for (int j = -5; j <= -1; ++j) CHECK(d.negative(m, j) == cplx{});
  }
  CHECK(d.negative.last_shell() == -1);
  testing::Gen g(41);
  const RadialKernel k = g.kernel(3, 4);
  const SplitKernel s = split_kernel(k);
  for (int m = 0; m < 6; ++m)
    for (int j = -6; j <= 6; ++j)
      CHECK(s.negative(m, j) + s.positive(m, j) == k(HorocycleMeasure::cell_distance(j, m)));
  const ZKernel row = s.negative.row(1);
  CHECK(row.d_min() == 2 - 4);
  CHECK(row.d_max() == -1);
  CHECK(row(-2) == k(4));
}

TEST_CASE("chi-minus rows through the phi sequence") {
  testing::Gen g(42);
  for (int t = 0; t < 20; ++t) {
    const double p = 1.5;
    const RadialKernel k = g.kernel(2 + t % 2, g.range(1, 5));
    const PhiSequence phi = phi_sequence(k, p);
    const SplitKernel s = split_kernel(k);
    const TreeParams& P = k.params();
    const double bound_const = phi_hinf_bound(k, p);
    for (int m = 0; m <= 3; ++m) {
      for (int j = -6; j <= -1; ++j) {
        const cplx rhs = P.pow(j / p) * P.pow(-2.0 * m / p) * phi.phi(2 * m - j);
        CHECK(std::abs(s.negative(m, j) - rhs) < 1e-8);
        CHECK(std::abs(s.negative(m, j)) <= bound_const * P.pow(j / p) * P.pow(-2.0 * m / p) * (1 + 1e-9));
      }
    }
  }
}

TEST_CASE("step bounds") {
  const TreeParams P(2);
  CHECK(step1_bound(RadialKernel::delta(P), 1.5) == 0.0);
  CHECK(step2_bound(RadialKernel::delta(P), 1.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(step2_bound(RadialKernel::sphere_indicator(P, 1), 1.5) ==
        doctest::Approx(std::pow(2.0, -1.0 / 6.0) * std::sqrt(2.0)).epsilon(1e-14));
  const RadialKernel b1 = RadialKernel::ball_indicator(P, 1);
  const double s1 = step1_bound(b1, 1.5);
  CHECK(s1 >= 0.0);
  CHECK(step1_bound(b1.scaled(cplx(0, -3)), 1.5) == doctest::Approx(3.0 * s1).epsilon(1e-9));
  CHECK(step2_bound(b1.scaled(-2.0), 1.5) == doctest::Approx(2.0 * step2_bound(b1, 1.5)));
  const double a = step2_bound(b1, 1.2), b = step2_bound(b1, 1.5), c = step2_bound(b1, 1.8);
  CHECK(a <= b);
  CHECK(b <= c);
  CHECK_THROWS_AS(step1_bound(b1, 2.0), ScopeError);
  CHECK_THROWS_AS(step1_bound(b1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(step2_bound(b1, 3.0), std::invalid_argument);
}

TEST_CASE("upper bounds and branches") {
  const TreeParams P(2);
  CHECK(cvp_upper(RadialKernel::delta(P), 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cvp_upper(RadialKernel::ball_indicator(P, 1), 1.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(cvp_upper(RadialKernel::ball_indicator(P, 1), INFINITY) == cvp_upper(RadialKernel::ball_indicator(P, 1), 1.0));
  const RadialKernel b2 = RadialKernel::ball_indicator(P, 2);
  CHECK(cvp_upper(b2, 4.0) == cvp_upper(b2, 4.0 / 3.0));
  CHECK_THROWS_AS(cvp_upper(b2, 2.0), ScopeError);
  CHECK_THROWS_AS(cvp_upper(b2, 0.5), std::invalid_argument);
}

TEST_CASE("lower bounds") {
  const TreeParams P(2);
  CHECK(cvp_lower(RadialKernel::delta(P), 1.5, 4) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cvp_lower(RadialKernel::ball_indicator(P, 1), 1.0, 4) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS(cvp_lower(RadialKernel::ball_indicator(P, 3), 1.5, 4), std::out_of_range);
  CHECK(cvp_lower(RadialKernel::ball_indicator(P, 1), 2.0, 14) >= 3.637);
}

TEST_CASE("symbol norm report") {
  for (int q : {2, 3}) {
    const TreeParams P(q);
    for (double p : {1.0, 1.5, 3.0}) {
      const SymbolNormReport r = symbol_norm_report(RadialKernel::delta(P), p);
      CHECK(r.interval.lower == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(r.interval.upper == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(r.weyl_residual == 0.0);
    }
    const SymbolNormReport s = symbol_norm_report(RadialKernel::sphere_indicator(P, 1), 1.0);
    CHECK(s.interval.upper == doctest::Approx(q + 1.0).epsilon(1e-12));
    CHECK(s.interval.lower == doctest::Approx(q + 1.0).epsilon(1e-12));
    CHECK_THROWS_AS(symbol_norm_report(RadialKernel::delta(P), 2.0), ScopeError);
  }
}

TEST_CASE("transference") {
  const TreeParams P(2);
  const TreeBall ball(P, 6);
  std::vector<cplx> f(ball.size());
  f[0] = 1.0;
  const TransferenceRecord r = transference_check(RadialKernel::delta(P), 1.5, f, ball);
  CHECK(r.lhs == 0.0);
  CHECK(r.rhs >= 0.0);
  CHECK(r.ok);

  testing::Gen g(43);
  for (Vertex v = 0; v < ball.prefix_size(5); ++v) f[v] = g.complex_unit();
  const TransferenceRecord eq = transference_check(RadialKernel::sphere_indicator(P, 1), 1.5, f, ball);
  CHECK(eq.lhs == doctest::Approx(eq.rhs).epsilon(1e-12));
  CHECK(eq.ok);

  const RadialKernel k = g.kernel(2, 3);
  std::vector<cplx> h(ball.size());
  for (Vertex v = 0; v < ball.prefix_size(3); ++v) h[v] = g.complex_unit();
  const TransferenceRecord a = transference_check(k, 4.0 / 3.0, h, ball);
  const TransferenceRecord b = transference_check(k.scaled(cplx(0, 2.5)), 4.0 / 3.0, h, ball);
  CHECK(a.ok);
  CHECK(b.ok);
  CHECK(b.lhs == doctest::Approx(2.5 * a.lhs));
  CHECK(b.rhs == doctest::Approx(2.5 * a.rhs));
  CHECK_THROWS_AS(transference_check(k, 2.0, h, ball), ScopeError);

  const int qs[] = {2, 3};
  const double ps[] = {4.0 / 3.0, 1.5};
  const TransferenceSuiteResult suite = transference_suite(7, 15, qs, ps, 6);
  CHECK(suite.passed == suite.instances);
}

TEST_CASE("theorem reports") {
  const TreeParams P(2);
  const TheoremReport d = theorem_report(RadialKernel::delta(P), 1.0, 4);
  CHECK(d.total_upper == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.compression_lower == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.symbol.lower == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.symbol.upper == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.sandwich_ok);
  CHECK(!d.step1_upper);

  const TheoremReport b1 = theorem_report(RadialKernel::ball_indicator(P, 1), 1.0, 6);
  CHECK(b1.total_upper == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(b1.compression_lower == doctest::Approx(4.0).epsilon(1e-12));

  const TheoremReport b2 = theorem_report(RadialKernel::ball_indicator(P, 2), 1.5, 8);
  CHECK(b2.sandwich_ok);
  CHECK(b2.slack >= 0.0);
  CHECK(b2.step1_upper.has_value());
  CHECK(*b2.step1_upper + *b2.step2_upper == b2.total_upper);
  CHECK(b2.weyl_residual == 0.0);
  CHECK(b2.dictionary_version == std::string(kZDictionaryVersion));
  CHECK_THROWS_AS(theorem_report(RadialKernel::delta(P), 2.0, 4), ScopeError);
}

TEST_CASE("report regression against the stored B_2 run") {
  std::ifstream in(std::string(TREEHARM_GOLDEN_DIR) + "/ball2_q2_p1.5_R10.json");
  REQUIRE(in);
  const auto golden = nlohmann::json::parse(in);
  const auto now = to_json(theorem_report(RadialKernel::ball_indicator(TreeParams(2), 2), 1.5, 10));
  CHECK(now["compression_lower"].get<double>() <= now["total_upper"].get<double>());
  for (const auto& [key, value] : golden.items()) {
    INFO(key);
    REQUIRE(now.contains(key));
    if (value.is_number_float()) {
      CHECK(now[key].get<double>() == doctest::Approx(value.get<double>()).epsilon(1e-9));
    } else if (!value.is_object()) {
      CHECK(now[key] == value);
    }
  }
}
