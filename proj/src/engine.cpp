#include "treeharm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "splitmix.hpp"
#include "treeharm/horocycle.hpp"

namespace treeharm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kWiden = 1e-13;

void require_step_exponent(double p) {
  if (p == 2.0) throw ScopeError("p = 2 lies outside the multiplier theorem (p in [1, inf) minus {2})");
  if (!(p > 1.0 && p < 2.0)) throw std::invalid_argument("step bounds need p in (1, 2), got " + format_double(p));
}

void require_theorem_exponent(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("exponent p must be >= 1, got " + format_double(p));
  if (p == 2.0) {
    throw ScopeError("p = 2 lies outside the multiplier theorem (p in [1, inf) minus {2}); "
                     "the spectral sup of the symbol is available separately");
  }
}

double step1_from(const RadialKernel& k, double p, const PhiSequence& phi, double hinf) {
  const TreeParams& P = k.params();
  const double delta = delta_of(p);
  const double U = phi_cvp_upper(k, p, phi, hinf);
  const double c0 = 1.0 / (P.pow(2.0 * delta) - 1.0);
  const double S0 = qp_moment(P, p, 0);
  const double S1 = qp_moment(P, p, 1);
  return (S0 * (U + (c0 + 1.0) * hinf) + S1 * hinf) * (1.0 + kWiden);
}

double l1_upper(const RadialKernel& k) {
  // D + 1 terms, each |k(d)| times an exact integer
  return k.l1_norm() * (1.0 + 4.0 * (k.support_radius() + 2) * kEps);
}

// |φ(0)| + ((q+1)/q) Σ_{d≥1} |φ(d)| at p = 1, which must reproduce ‖k‖_{ℓ¹(T)}.
double l1_from_phi(const RadialKernel& k, const PhiSequence& phi) {
  const double q = k.q();
  double s = std::abs(phi.phi(0));
  for (int d = 1; d <= k.support_radius(); ++d) s += (q + 1.0) / q * std::abs(phi.phi(d));
  return s;
}

}  // namespace

GroupWeight::GroupWeight(TreeParams params_, double p_)
    : params(params_), p(p_), p_conj(conjugate_exponent(p_)), delta(delta_of(p_)) {
  if (!(p_ >= 1.0)) throw std::invalid_argument("exponent p must be >= 1");
}

ZKernel HorocyclicKernel::row(int m) const {
  const int D = k_.support_radius();
  int lo, hi;
  if (negative_) {
    lo = 2 * m - D;
    hi = -1;
  } else {
    lo = std::max(0, 2 * m - D);
    hi = D;
  }
  if (m < 0 || lo > hi) return ZKernel(k_.params(), 0, {});
  std::vector<cplx> v;
  for (int j = lo; j <= hi; ++j) v.push_back((*this)(m, j));
  return ZKernel(k_.params(), lo, std::move(v)).trimmed();
}

int HorocyclicKernel::last_shell() const {
  const int D = k_.support_radius();
  if (negative_) return D >= 1 ? (D - 1) / 2 : -1;
  return D;
}

SplitKernel split_kernel(const RadialKernel& k) { return {HorocyclicKernel(k, true), HorocyclicKernel(k, false)}; }

double phi_cvp_upper(const RadialKernel& k, double p, const PhiSequence& phi, double hinf) {
  const TreeParams& P = k.params();
  const double delta = delta_of(p);
  const int L = phi.half_width;
  const int N = phi.grid_nodes;
  const double rho = P.pow(-2.0 * delta);
  const double tail = hinf * P.pow(-2.0 * delta * (L + 1)) / (1.0 - rho);
  const double alias = (2 * L + 1) * hinf * P.pow(-2.0 * delta * (N - L)) / (1.0 - P.pow(-2.0 * delta * N));
  const double rounding = (2 * L + 1) * 8.0 * kEps * hinf;
  return cvp_upper(phi.phi, p) + tail + alias + rounding;
}

double step1_bound(const RadialKernel& k, double p) {
  require_step_exponent(p);
  if (k.is_point_mass()) return 0.0;
  const PhiSequence phi = phi_sequence(k, p);
  return step1_from(k, p, phi, phi_hinf_bound(k, p));
}

double step2_bound(const RadialKernel& k, double p) {
  require_step_exponent(p);
  const AbelSequence a = abel_forward(k.abs());
  const double delta = delta_of(p);
  double s = 0.0;
  for (int j = 0; j <= a.radius(); ++j) s += k.params().pow(-j * delta) * a(j).real();
  return s * (1.0 + 4.0 * (a.radius() + 2) * kEps);
}

double cvp_upper(const RadialKernel& k, double p) {
  require_theorem_exponent(p);
  const double ph = canonical_exponent(p);
  if (ph == 1.0) {
    const double l1 = l1_upper(k);
    const double via_phi = l1_from_phi(k, phi_sequence(k, 1.0));
    if (std::abs(via_phi - l1) > 1e-8 * std::max(1.0, l1)) {
      throw std::logic_error("l1 norm and its phi form disagree: " + format_double(l1) + " vs " +
                             format_double(via_phi));
    }
    return l1;
  }
  return step1_bound(k, ph) + step2_bound(k, ph);
}

double cvp_lower(const RadialKernel& k, double p, int R, const NormEstimateOptions& options) {
  if (R < k.support_radius() + 2) {
    throw std::out_of_range("compression needs R >= D + 2, got R = " + std::to_string(R) +
                            ", D = " + std::to_string(k.support_radius()));
  }
  const TreeBall ball(k.params(), R);
  return opnorm_lower(ball, k, p, options);
}

double spectral_sup(const RadialKernel& k) { return symbol_sup(abel_forward(k).as_zkernel()).upper; }

SymbolNormReport symbol_norm_report(const RadialKernel& k, double p) {
  require_theorem_exponent(p);
  const AbelSequence a = abel_forward(k);
  return {cvp_interval(a.shifted_symbol(delta_of(p)), p), a.weyl_residual()};
}

TransferenceRecord transference_check(const RadialKernel& k, double p, std::span<const cplx> f,
                                      const TreeBall& ball) {
  require_step_exponent(p);
  TransferenceRecord rec;
  rec.lhs = lp_norm(convolve_height_part(ball, k, f, HeightPart::Negative), p);

  const HorocyclicKernel neg(k, true);
  const HorocycleMeasure mu(k.params());
  double sum = 0.0;
  for (int m = 0; m <= neg.last_shell(); ++m) {
    const ZKernel row = neg.row(m);
    if (row.empty()) continue;
    std::vector<cplx> weighted(row.values());
    for (int i = 0; i < row.width(); ++i) weighted[i] *= k.params().pow(-(row.d_min() + i) / p);
    sum += static_cast<double>(mu.shell_mass(m)) * cvp_upper(ZKernel(k.params(), row.d_min(), weighted), p);
  }
  rec.rhs = lp_norm(f, p) * sum;
  rec.ok = rec.lhs <= rec.rhs * (1.0 + 1e-12) + 1e-12;
  return rec;
}

TheoremReport theorem_report(const RadialKernel& k, double p, int R, int grid, const NormEstimateOptions& options) {
  require_theorem_exponent(p);
  if (R < k.support_radius() + 2) {
    throw std::out_of_range("compression needs R >= D + 2, got R = " + std::to_string(R) +
                            ", D = " + std::to_string(k.support_radius()));
  }
  TheoremReport rep;
  rep.q = k.q();
  rep.p = p;
  rep.R = R;
  rep.dictionary_version = kZDictionaryVersion;
  const double ph = canonical_exponent(p);

  if (ph == 1.0) {
    rep.branch = "l1";
    const PhiSequence phi = phi_sequence(k, 1.0, grid);
    rep.grid_N = phi.grid_nodes;
    rep.total_upper = cvp_upper(k, p);
  } else {
    rep.branch = p < 2.0 ? "steps" : "dual-steps";
    const PhiSequence phi = phi_sequence(k, ph, grid);
    rep.grid_N = phi.grid_nodes;
    rep.step1_upper = k.is_point_mass() ? 0.0 : step1_from(k, ph, phi, phi_hinf_bound(k, ph));
    rep.step2_upper = step2_bound(k, ph);
    rep.total_upper = *rep.step1_upper + *rep.step2_upper;
  }

  const TreeBall ball(k.params(), R);
  const LowerBoundResult low = opnorm_lower_detailed(ball, k, p, options);
  rep.compression_lower = low.value;
  rep.compression_witness = low.witness;

  const SymbolNormReport sym = symbol_norm_report(k, p);
  rep.symbol = sym.interval;
  rep.weyl_residual = sym.weyl_residual;

  rep.slack = rep.total_upper - rep.compression_lower;
  rep.ratio_lower_to_symbol_upper = sym.interval.upper > 0 ? rep.compression_lower / sym.interval.upper : 0.0;
  rep.ratio_upper_to_symbol_lower = sym.interval.lower > 0 ? rep.total_upper / sym.interval.lower : 0.0;
  rep.sandwich_ok = rep.compression_lower <= rep.total_upper;
  return rep;
}


TransferenceSuiteResult transference_suite(std::uint64_t seed, int instances, std::span<const int> qs,
                                           std::span<const double> ps, int max_radius) {
  if (qs.empty() || ps.empty()) throw std::invalid_argument("transference suite needs q and p choices");
  if (max_radius < 3) throw std::invalid_argument("transference suite needs radius >= 3");
  TransferenceSuiteResult res;
  std::uint64_t state = seed;
  auto pick = [&](std::uint64_t n) { return static_cast<int>(detail::splitmix(state) % n); };
  auto unit = [&] { return 2.0 * detail::uniform01(state) - 1.0; };
  for (int t = 0; t < instances; ++t) {
    const TreeParams P(qs[pick(qs.size())]);
    const double p = ps[pick(ps.size())];
    const int D = 1 + pick(std::min(3, max_radius - 2));
    const int R = D + 2 + pick(max_radius - D - 1);
    std::vector<cplx> kv(D + 1);
    for (auto& v : kv) v = cplx(unit(), unit());
    const RadialKernel k(P, kv);
    const TreeBall ball(P, R);
    std::vector<cplx> f(ball.size());
    const Vertex window = ball.prefix_size(R - D);
    for (Vertex v = 0; v < window; ++v)
      if (pick(3) != 0) f[v] = cplx(unit(), unit());
    const TransferenceRecord rec = transference_check(k, p, f, ball);
    ++res.instances;
    if (rec.ok) ++res.passed;
    if (rec.rhs > 0.0) res.worst_ratio = std::max(res.worst_ratio, rec.lhs / rec.rhs);
  }
  return res;
}

}  // namespace treeharm
