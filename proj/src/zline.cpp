#include "treeharm/zline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>

#include "splitmix.hpp"
#include "treeharm/tree_convolution.hpp"

namespace treeharm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_exponent(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("exponent p must lie in [1, ∞], got " + format_double(p));
}

// Q(u) = Σ_k c_k u^k together with its first two θ-derivatives, u = e^{−iθ}.
struct Horner3 {
  cplx value, d1, d2;
};

cplx horner(const std::vector<cplx>& c, cplx u) {
  cplx acc{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
  return acc;
}

Horner3 horner3(const std::vector<cplx>& c, double theta) {
  const cplx u = std::polar(1.0, -theta);
  cplx a{}, b{}, e{};
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
    a = a * u + c[k];
    b = b * u + c[k] * cplx(0.0, -static_cast<double>(k));
    e = e * u + c[k] * (-static_cast<double>(k) * k);
  }
  return {a, b, e};
}

std::int64_t next_pow2(std::int64_t n) {
  std::int64_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

constexpr std::int64_t kSupWorkBudget = std::int64_t{1} << 25;
constexpr double kSupRelativeSlack = 1e-12;

double lp(const std::vector<cplx>& v, double p) { return lp_norm(std::span<const cplx>(v), p); }

}  // namespace

ZKernel::ZKernel(TreeParams params, int d_min, std::vector<cplx> values)
    : params_(params), d_min_(d_min), values_(std::move(values)) {
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::invalid_argument("ZKernel values must be finite");
    }
  }
}

ZKernel ZKernel::delta(TreeParams params, int d) { return {params, d, {cplx{1.0}}}; }

double ZKernel::l1_norm() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::abs(v);
  return s;
}

ZKernel ZKernel::trimmed() const {
  int lo = 0, hi = width();
  while (lo < hi && values_[lo] == cplx{}) ++lo;
  while (hi > lo && values_[hi - 1] == cplx{}) --hi;
  if (lo == hi) return {params_, d_min_, {}};
  return {params_, d_min_ + lo, std::vector<cplx>(values_.begin() + lo, values_.begin() + hi)};
}

ZKernel ZKernel::line_coefficients(double v) const {
  std::vector<cplx> c(values_.size());
  for (int i = 0; i < width(); ++i) c[i] = values_[i] * params_.pow(v * (d_min_ + i));
  return {params_, d_min_, std::move(c)};
}

void TorusSymbol::validate(int min_nodes) const {
  if (size() < min_nodes || !is_power_of_two(size())) {
    throw std::invalid_argument("torus grid needs a power-of-two N ≥ " + std::to_string(min_nodes) +
                                ", got N = " + std::to_string(size()));
  }
}

StripDomain::StripDomain(double eps) : epsilon(eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("strip width ε must be positive, got " + format_double(eps));
  }
}

cplx fourier_z(const ZKernel& F, cplx s) {
  const double L = F.params().log_q();
  cplx sum{};
  for (int i = 0; i < F.width(); ++i) {
    const double d = F.d_min() + i;
    sum += F.values()[i] * std::exp(d * s.imag() * L) * std::polar(1.0, -d * s.real() * L);
  }
  return sum;
}

TorusSymbol sample_fourier_z(const ZKernel& F, int N, double shift) {
  if (N < 1) throw std::invalid_argument("grid size must be positive");
  TorusSymbol sym{F.params(), shift, std::vector<cplx>(N)};
  const ZKernel line = F.line_coefficients(shift);
  const double L = F.params().log_q();
  for (int n = 0; n < N; ++n) {
    const double theta = sym.node(n) * L;
    sym.samples[n] = std::polar(1.0, -F.d_min() * theta) * horner(line.values(), std::polar(1.0, -theta));
  }
  return sym;
}

cplx inverse_fourier_z(const TorusSymbol& symbol, int d) {
  symbol.validate(64);
  const double L = symbol.params.log_q();
  cplx sum{};
  for (int n = 0; n < symbol.size(); ++n) {
    sum += symbol.samples[n] * std::polar(1.0, d * symbol.node(n) * L);
  }
  return sum / static_cast<double>(symbol.size()) * symbol.params.pow(-symbol.shift * d);
}

SupEstimate symbol_sup(const ZKernel& F, double v) {
  SupEstimate est;
  const ZKernel line = F.line_coefficients(v).trimmed();
  if (line.empty()) return est;
  const auto& c = line.values();
  const auto W = static_cast<std::int64_t>(c.size());

  double A = 0.0, first = 0.0;
  for (std::int64_t k = 0; k < W; ++k) {
    A += std::abs(c[k]);
    first += std::abs(c[k]) * static_cast<double>(k);
  }
  const double mean = first / A;
  double spread = 0.0;
  for (std::int64_t k = 0; k < W; ++k) spread += std::abs(c[k]) * (k - mean) * (k - mean);
  const double curvature = 2.0 * A * spread;  // ≥ sup |g''|
  const double rounding = (4.0 * W + 8.0) * kEps * A;

  auto grid_max = [&](std::int64_t N, std::vector<double>& g) {
    g.assign(N, 0.0);
    double best = 0.0;
    for (std::int64_t n = 0; n < N; ++n) {
      const double theta = -kPi + 2.0 * kPi * n / N;
      g[n] = std::norm(horner(c, std::polar(1.0, -theta)));
      best = std::max(best, g[n]);
    }
    return best;
  };

  std::int64_t N = std::max<std::int64_t>(1024, next_pow2(4 * W));
  std::vector<double> g;
  double gmax = grid_max(N, g);
  if (curvature > 0.0 && gmax > 0.0) {
    const double h_target = std::sqrt(8.0 * kSupRelativeSlack * gmax / curvature);
    std::int64_t want = next_pow2(static_cast<std::int64_t>(std::ceil(2.0 * kPi / h_target)));
    const std::int64_t cap = std::max(N, next_pow2(kSupWorkBudget / W) / 2);
    want = std::min(want, cap);
    if (want > N) {
      N = want;
      gmax = grid_max(N, g);
    }
  }
  const double h = 2.0 * kPi / N;

  // Newton refinement from the largest local maxima.
  std::vector<std::int64_t> peaks;
  for (std::int64_t n = 0; n < N; ++n) {
    const double left = g[(n + N - 1) % N], right = g[(n + 1) % N];
    if (g[n] >= left && g[n] >= right) peaks.push_back(n);
  }
  const std::size_t keep = std::min<std::size_t>(8, peaks.size());
  std::partial_sort(peaks.begin(), peaks.begin() + keep, peaks.end(),
                    [&](auto a, auto b) { return g[a] > g[b] || (g[a] == g[b] && a < b); });
  peaks.resize(keep);

  double best = gmax;
  double best_theta = peaks.empty() ? -kPi : -kPi + h * peaks.front();
  for (auto n : peaks) {
    double theta = -kPi + h * n;
    for (int it = 0; it < 4; ++it) {
      const Horner3 q = horner3(c, theta);
      const double g1 = 2.0 * std::real(std::conj(q.value) * q.d1);
      const double g2 = 2.0 * (std::norm(q.d1) + std::real(std::conj(q.value) * q.d2));
      if (!(g2 < 0.0)) break;
      theta += std::clamp(-g1 / g2, -h, h);
      const double val = std::norm(horner(c, std::polar(1.0, -theta)));
      if (val > best) {
        best = val;
        best_theta = theta;
      }
    }
  }
  est.grid_nodes = static_cast<int>(N);
  est.attained = std::max(0.0, std::sqrt(best) - rounding);
  const double top = std::sqrt(gmax) + rounding;
  est.upper = std::sqrt(top * top + curvature * h * h / 8.0) * (1.0 + 4.0 * kEps);
  est.upper = std::max(est.upper, est.attained);
  double theta = std::remainder(best_theta, 2.0 * kPi);
  est.argmax = theta / F.params().log_q();
  return est;
}

std::vector<cplx> convolve_z(const std::vector<cplx>& f, const ZKernel& F) {
  if (f.empty() || F.empty()) return {};
  std::vector<cplx> y(f.size() + F.values().size() - 1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == cplx{}) continue;
    for (std::size_t k = 0; k < F.values().size(); ++k) y[i + k] += f[i] * F.values()[k];
  }
  return y;
}

namespace {

double certified_l1(const ZKernel& F) { return F.l1_norm() * (1.0 + (F.width() - 1) * kEps); }

// ‖F‖_{ℓ¹}^a · sup^{1−a}, a = |2/p − 1|.
double riesz_thorin(double l1, double sup, double p) {
  const double a = std::abs(2.0 / p - 1.0);
  return std::min(l1, std::pow(l1, a) * std::pow(sup, 1.0 - a) * (1.0 + 4.0 * kEps));
}

}  // namespace

double cvp_upper(const ZKernel& F, double p) {
  require_exponent(p);
  if (F.trimmed().empty()) return 0.0;
  const double l1 = certified_l1(F);
  const double ph = canonical_exponent(p);
  if (ph == 1.0) return l1;
  const double sup = symbol_sup(F).upper;
  if (ph == 2.0) return sup;
  return riesz_thorin(l1, sup, p);
}

namespace {

// Lower bounds from explicit trial vectors, scored at p̂ and p̂'.
class ZTrialSearch {
 public:
  ZTrialSearch(const ZKernel& F, double ph) : F_(F), ph_(ph), pc_(conjugate_exponent(ph)) {}

  void score(const std::vector<cplx>& f, const std::vector<cplx>& y, const std::string& name) {
    for (double r : {ph_, pc_}) {
      const double den = lp(f, r);
      if (den == 0.0) continue;
      const double ratio = lp(y, r) / den;
      if (ratio > best_) {
        best_ = ratio;
        method_ = name + (r == ph_ ? "" : "@p'");
      }
    }
    const double den = lp(f, ph_);
    if (den > 0.0) {
      const double ratio = lp(y, ph_) / den;
      if (ratio > best_primal_) {
        best_primal_ = ratio;
        start_ = f;
      }
    }
  }

  void trial(const std::vector<cplx>& f, const std::string& name) { score(f, convolve_z(f, F_), name); }

  // y = (w^i 1_{[0,L)}) ∗ F in O(L + W) via prefix sums.
  void modulated_box(int L, double freq, const std::string& name) {
    const auto& c = F_.values();
    const int W = static_cast<int>(c.size());
    const double theta = freq * F_.params().log_q();
    std::vector<cplx> prefix(W + 1);
    for (int k = 0; k < W; ++k) prefix[k + 1] = prefix[k] + c[k] * std::polar(1.0, -theta * k);
    std::vector<cplx> f(L), y(L + W - 1);
    for (int i = 0; i < L; ++i) f[i] = std::polar(1.0, theta * i);
    for (int m = 0; m < L + W - 1; ++m) {
      const int lo = std::max(0, m - L + 1), hi = std::min(W - 1, m);
      y[m] = std::polar(1.0, theta * m) * (prefix[hi + 1] - prefix[lo]);
    }
    score(f, y, name);
  }

  void duality(int iterations) {
    if (start_.empty() || ph_ == 1.0) return;
    const auto& c = F_.values();
    const std::size_t W = c.size();
    std::vector<cplx> f = start_;
    double prev = 0.0;
    for (int it = 0; it < iterations; ++it) {
      const std::vector<cplx> y = convolve_z(f, F_);
      score(f, y, "duality");
      const double ny = lp(y, ph_);
      if (ny == 0.0) return;
      std::vector<cplx> z(y.size());
      for (std::size_t m = 0; m < y.size(); ++m) {
        const double a = std::abs(y[m]);
        z[m] = a == 0.0 ? cplx{} : std::pow(a / ny, ph_ - 1.0) * (y[m] / a);
      }
      std::vector<cplx> w(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) {
        cplx acc{};
        for (std::size_t k = 0; k < W; ++k) acc += std::conj(c[k]) * z[i + k];
        w[i] = acc;
      }
      // Adjoint ratio: the compressed adjoint is bounded by the same norm on ℓ^{p'}.
      const double nz = lp(z, pc_);
      if (nz > 0.0) {
        const double ratio = lp(w, pc_) / nz;
        if (ratio > best_) {
          best_ = ratio;
          method_ = "duality-adjoint";
        }
      }
      const double nw = lp(w, pc_);
      if (nw == 0.0) return;
      for (std::size_t i = 0; i < f.size(); ++i) {
        const double a = std::abs(w[i]);
        f[i] = a == 0.0 ? cplx{} : std::pow(a / nw, pc_ - 1.0) * (w[i] / a);
      }
      if (std::abs(best_primal_ - prev) <= 1e-12 * best_primal_) break;
      prev = best_primal_;
    }
  }

  double best() const { return best_; }
  const std::string& method() const { return method_; }

 private:
  const ZKernel& F_;
  double ph_, pc_;
  double best_ = 0.0, best_primal_ = 0.0;
  std::string method_ = "none";
  std::vector<cplx> start_;
};

}  // namespace

NormInterval cvp_interval(const ZKernel& G, double p) {
  require_exponent(p);
  NormInterval out;
  const ZKernel F = G.trimmed();
  if (F.empty()) {
    out.lower_method = out.upper_method = "zero";
    return out;
  }
  const double ph = canonical_exponent(p);
  const double l1 = F.l1_norm();
  if (ph == 1.0) {
    out.lower = l1;
    out.upper = l1 * (1.0 + (F.width() - 1) * kEps);
    out.lower_method = "delta";
    out.upper_method = "l1";
    return out;
  }
  const SupEstimate sup = symbol_sup(F);
  if (ph == 2.0) {
    out.lower = sup.attained;
    out.upper = sup.upper;
    out.lower_method = "symbol-sup";
    out.upper_method = "symbol-sup-certified";
    return out;
  }
  out.upper = riesz_thorin(certified_l1(F), sup.upper, p);
  out.upper_method = "riesz-thorin";

  ZTrialSearch search(F, ph);
  search.trial({cplx{1.0}}, "delta");
  const double tau = F.params().tau();
  std::vector<double> freqs;
  for (int k = 0; k < 32; ++k) freqs.push_back(-0.5 * tau + k * tau / 32.0);
  freqs.push_back(sup.argmax);
  for (int L = 1; L <= 4096; L *= 2) {
    search.modulated_box(L, 0.0, "box");
    for (std::size_t k = 0; k < freqs.size(); ++k) {
      if (freqs[k] != 0.0) search.modulated_box(L, freqs[k], "modulated-box");
    }
  }
  std::uint64_t state = 0x5eedf00dULL;
  for (int t = 0; t < 16; ++t) {
    std::vector<cplx> f(256);
    for (auto& x : f) x = (detail::splitmix(state) >> 63) ? 1.0 : -1.0;
    search.trial(f, "random-sign");
  }
  search.duality(50);
  // Allowance for rounding in the two norm evaluations behind each ratio.
  out.lower = std::min(search.best() * (1.0 - 1e-13), out.upper);
  out.lower_method = search.method();
  return out;
}

double hinf_strip_norm(const ZKernel& F, const StripDomain& strip) {
  return std::max(symbol_sup(F, 0.0).upper, symbol_sup(F, -strip.epsilon).upper);
}

double hinf_strip_norm(const ZKernel& F, double eps) { return hinf_strip_norm(F, StripDomain(eps)); }

double TruncationTerms::bound(int J) const {
  if (J < 0) throw std::invalid_argument("truncation index J must be ≥ 0");
  return cvp_upper + (1.0 / (q_eps - 1.0) + J) * hinf;
}

TruncationTerms truncation_terms(const ZKernel& F, double eps, double p) {
  const StripDomain strip(eps);
  return {cvp_upper(F, p), hinf_strip_norm(F, strip), F.params().pow(strip.epsilon)};
}

double truncation_bound(const ZKernel& F, int J, double eps, double p) {
  return truncation_terms(F, eps, p).bound(J);
}

ZKernel truncate(const ZKernel& F, int J) {
  if (J <= F.d_min()) return F;
  if (J > F.d_max()) return {F.params(), J, {}};
  const int off = J - F.d_min();
  return {F.params(), J, std::vector<cplx>(F.values().begin() + off, F.values().end())};
}


ZKernel harmonic_truncation(TreeParams params, int N) {
  if (N < 1) throw std::invalid_argument("harmonic truncation needs N >= 1");
  std::vector<cplx> v(N);
  for (int j = 1; j <= N; ++j) v[j - 1] = 1.0 / j;
  return {params, 1, std::move(v)};
}

}  // namespace treeharm
