#include "treeharm/tree_convolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "splitmix.hpp"

namespace treeharm {

namespace {

// Relative rounding allowance for ‖Kf‖/‖f‖: each output entry sums at most
// |B_D| products, the norms are accumulated in extended precision.
double ratio_rounding(const RadialKernel& k) {
  const double terms = static_cast<double>(TreeBall::vertex_count(k.q(), k.support_radius()));
  return (2.0 * terms + 16.0) * std::numeric_limits<double>::epsilon();
}

template <typename Fn>
void parallel_for(Vertex n, int threads, Fn&& fn) {
  if (threads <= 1 || n < 8192) {
    fn(Vertex{0}, n);
    return;
  }
  const Vertex chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  for (Vertex lo = 0; lo < n; lo += chunk) pool.emplace_back(fn, lo, std::min(n, lo + chunk));
  for (auto& t : pool) t.join();
}

double magnitude(double x) { return std::abs(x); }
double magnitude(cplx x) { return std::abs(x); }
double phase_of(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }
cplx phase_of(cplx x) {
  const double a = std::abs(x);
  return a == 0.0 ? cplx{} : x / a;
}

template <typename T>
double lp_norm_impl(std::span<const T> v, double p) {
  double scale = 0.0;
  for (const auto& x : v) scale = std::max(scale, magnitude(x));
  if (scale == 0.0 || std::isinf(p)) return scale;
  // extended accumulator: balls hold up to ~10^6 terms
  long double s = 0.0L;
  if (p == 1.0) {
    for (const auto& x : v) s += magnitude(x);
    return static_cast<double>(s);
  }
  if (p == 2.0) {
    for (const auto& x : v) {
      const long double a = magnitude(x) / scale;
      s += a * a;
    }
    return scale * static_cast<double>(std::sqrt(s));
  }
  for (const auto& x : v) s += std::pow(magnitude(x) / scale, p);
  return scale * std::pow(static_cast<double>(s), 1.0 / p);
}

using detail::splitmix;

}  // namespace

double lp_norm(std::span<const cplx> v, double p) { return lp_norm_impl(v, p); }
double lp_norm(std::span<const double> v, double p) { return lp_norm_impl(v, p); }

OperatorHandle::OperatorHandle(const TreeBall& ball, RadialKernel kernel, int threads)
    : ball_(&ball), kernel_(std::move(kernel)), threads_(std::max(1, threads)) {
  if (!(kernel_.params() == ball.params())) {
    throw std::invalid_argument("kernel and ball are built for different q");
  }
  if (kernel_.support_radius() > ball.radius()) {
    throw std::invalid_argument("kernel support radius " + std::to_string(kernel_.support_radius()) +
                                " exceeds ball radius " + std::to_string(ball.radius()));
  }
  if (kernel_.is_real()) {
    for (const auto& v : kernel_.values()) real_coeffs_.push_back(v.real());
  }
}

template <typename T>
void OperatorHandle::apply_impl(std::span<const T> in, std::span<T> out, int r,
                                std::span<const T> coeffs) const {
  const Vertex n = ball_->prefix_size(r);
  if (static_cast<Vertex>(in.size()) != n || static_cast<Vertex>(out.size()) != n) {
    throw std::invalid_argument("vector length does not match the sub-ball");
  }
  const int D = static_cast<int>(coeffs.size()) - 1;
  const auto parent = ball_->parents();
  const auto first = ball_->first_children();
  const auto depth = ball_->depths();
  const int q = ball_->q();

  auto adjacency = [&](std::span<const T> src, std::span<T> dst) {
    parallel_for(n, threads_, [&](Vertex lo, Vertex hi) {
      for (Vertex v = lo; v < hi; ++v) {
        T acc = v > 0 ? src[parent[v]] : T{};
        if (depth[v] < r) {
          const Vertex c0 = first[v];
          const Vertex c1 = c0 + (v == 0 ? q + 1 : q);
          for (Vertex c = c0; c < c1; ++c) acc += src[c];
        }
        dst[v] = acc;
      }
    });
  };

  for (Vertex v = 0; v < n; ++v) out[v] = coeffs[0] * in[v];
  if (D == 0) return;

  std::vector<T> prev(in.begin(), in.end()), cur(n), next(n);
  adjacency(prev, cur);
  for (Vertex v = 0; v < n; ++v) out[v] += coeffs[1] * cur[v];
  for (int s = 1; s < D; ++s) {
    adjacency(cur, next);
    const double back = s == 1 ? q + 1 : q;
    for (Vertex v = 0; v < n; ++v) {
      next[v] -= back * prev[v];
      out[v] += coeffs[s + 1] * next[v];
    }
    std::swap(prev, cur);
    std::swap(cur, next);
  }
}

void OperatorHandle::apply(std::span<const cplx> in, std::span<cplx> out, int r) const {
  apply_impl<cplx>(in, out, r, kernel_.values());
}

void OperatorHandle::apply(std::span<const double> in, std::span<double> out, int r) const {
  if (real_coeffs_.empty()) throw std::invalid_argument("real product requested for a complex kernel");
  apply_impl<double>(in, out, r, real_coeffs_);
}

std::vector<cplx> convolve(const TreeBall& ball, const RadialKernel& k, std::span<const cplx> f,
                           int threads) {
  const OperatorHandle op(ball, k, threads);
  std::vector<cplx> out(ball.size());
  op.apply(f, out, ball.radius());
  return out;
}

std::vector<cplx> convolve_height_part(const TreeBall& ball, const RadialKernel& k,
                                       std::span<const cplx> f, HeightPart part) {
  if (static_cast<Vertex>(f.size()) != ball.size()) {
    throw std::invalid_argument("vector length does not match the ball");
  }
  const int D = k.support_radius();
  if (D > ball.radius()) throw std::invalid_argument("kernel support exceeds ball radius");
  const int window = ball.radius() - D;
  const auto height = ball.heights();
  std::vector<cplx> out(ball.size());
  for (Vertex y = 0; y < ball.size(); ++y) {
    if (f[y] == cplx{}) continue;
    if (ball.depth(y) > window) {
      throw std::invalid_argument("input must vanish outside the interior window B_{R-D}");
    }
    const int hy = height[y];
    ball.for_each_within(y, D, [&](Vertex x, int d) {
      const bool below = height[x] - hy <= -1;
      if (below == (part == HeightPart::Negative)) out[x] += f[y] * k(d);
    });
  }
  return out;
}

namespace {

// Lower-bound search on the sub-ball B_r for one scalar type.
template <typename T>
class TrialSearch {
 public:
  TrialSearch(const TreeBall& ball, const OperatorHandle& op, const OperatorHandle& adjoint, double p,
              const NormEstimateOptions& opt, int r)
      : ball_(ball), op_(op), adj_(adjoint), p_(p), pd_(conjugate_exponent(p)), opt_(opt), r_(r),
        n_(ball.prefix_size(r)), nw_(ball.prefix_size(r - op.kernel().support_radius())) {}

  LowerBoundResult run() {
    const int D = op_.kernel().support_radius();
    const int w = r_ - D;
    const int q = ball_.q();
    const auto depth = ball_.depths();

    std::vector<T> f(n_);
    auto reset = [&] { std::fill(f.begin(), f.end(), T{}); };

    reset();
    f[0] = 1.0;
    score(f, "delta");
    for (int s = 1; s <= w; ++s) {
      reset();
      for (Vertex v = 0; v < nw_; ++v)
        if (depth[v] == s) f[v] = 1.0;
      score(f, "sphere(" + std::to_string(s) + ")");
      for (Vertex v = 0; v < nw_; ++v)
        if (depth[v] <= s) f[v] = 1.0;
      score(f, "ball(" + std::to_string(s) + ")");
    }
    reset();
    for (Vertex v = 0; v < nw_; ++v) f[v] = std::exp(-depth[v] * ball_.params().log_q() / p_);
    score(f, "profile");
    reset();
    for (Vertex v = 0; v < nw_; ++v)
      f[v] = (1.0 + (q - 1.0) / (q + 1.0) * depth[v]) * std::exp(-0.5 * depth[v] * ball_.params().log_q());
    score(f, "ground-state");
    if constexpr (std::is_same_v<T, cplx>) {
      reset();
      for (Vertex v = 0; v < nw_; ++v)
        if (depth[v] <= D) f[v] = phase_of(std::conj(op_.kernel()(depth[v])));
      score(f, "row-phase");
    } else {
      reset();
      for (Vertex v = 0; v < nw_; ++v)
        if (depth[v] <= D) f[v] = phase_of(op_.kernel()(depth[v]).real());
      score(f, "row-phase");
    }
    for (int t = 0; t < opt_.random_trials; ++t) {
      std::uint64_t state = opt_.seed ^ (0xA24BAED4963EE407ULL * static_cast<std::uint64_t>(r_ * 64 + t + 1));
      reset();
      for (Vertex v = 0; v < nw_; ++v) f[v] = (splitmix(state) >> 63) ? 1.0 : -1.0;
      score(f, "random#" + std::to_string(t));
    }
    if (p_ > 1.0) duality_iteration();
    return best_;
  }

 private:
  void note(double value, const std::string& witness) {
    if (value > best_.value) {
      best_.value = value;
      best_.witness = witness;
      best_.radius = r_;
    }
  }

  void score(const std::vector<T>& f, const std::string& witness) {
    std::vector<T> y(n_);
    op_.apply(std::span<const T>(f), std::span<T>(y), r_);
    const double np = lp_norm(std::span<const T>(f), p_);
    if (np == 0.0) return;
    const double vp = lp_norm(std::span<const T>(y), p_) / np;
    const double vd = lp_norm(std::span<const T>(y), pd_) / lp_norm(std::span<const T>(f), pd_);
    note(std::max(vp, vd), witness);
    if (vp > best_start_value_) {
      best_start_value_ = vp;
      best_start_ = f;
    }
  }

  // Boyd's iteration x ← J_{p'}(A* J_p(A x)); every iterate is a trial.
  void duality_iteration() {
    std::vector<T> x = best_start_;
    std::vector<T> y(n_), z(n_), w(n_);
    const double nx = lp_norm(std::span<const T>(x), p_);
    for (auto& v : x) v /= nx;
    double previous = 0.0;
    int it = 0;
    for (; it < opt_.max_iterations; ++it) {
      op_.apply(std::span<const T>(x), std::span<T>(y), r_);
      double s = 0.0;
      for (Vertex v = 0; v < n_; ++v) {
        const double a = magnitude(y[v]);
        const double ap = p_ == 2.0 ? a * a : std::pow(a, p_);
        s += ap;
        z[v] = a == 0.0 ? T{} : phase_of(y[v]) * (ap / a);
      }
      if (s == 0.0) break;
      const double primal = std::pow(s, 1.0 / p_);
      note(primal, "duality-map");
      const double zn = std::pow(s, 1.0 / pd_);
      for (auto& v : z) v /= zn;

      adj_.apply(std::span<const T>(z), std::span<T>(w), r_);
      double s2 = 0.0;
      for (Vertex v = 0; v < nw_; ++v) {
        const double a = magnitude(w[v]);
        const double ap = pd_ == 2.0 ? a * a : std::pow(a, pd_);
        s2 += ap;
        x[v] = a == 0.0 ? T{} : phase_of(w[v]) * (ap / a);
      }
      for (Vertex v = nw_; v < n_; ++v) x[v] = T{};
      if (s2 == 0.0) break;
      note(std::pow(s2, 1.0 / pd_), "duality-map(adjoint)");
      const double xn = std::pow(s2, 1.0 / p_);
      for (Vertex v = 0; v < nw_; ++v) x[v] /= xn;

      if (previous > 0.0 && std::abs(primal - previous) <= opt_.relative_tolerance * primal) {
        ++it;
        break;
      }
      previous = primal;
    }
    best_.iterations = it;
  }

  const TreeBall& ball_;
  const OperatorHandle& op_;
  const OperatorHandle& adj_;
  double p_, pd_;
  const NormEstimateOptions& opt_;
  int r_;
  Vertex n_, nw_;
  LowerBoundResult best_;
  std::vector<T> best_start_;
  double best_start_value_ = -1.0;
};

}  // namespace

LowerBoundResult opnorm_lower_detailed(const TreeBall& ball, const RadialKernel& k, double p,
                                       const NormEstimateOptions& options) {
  if (!(p >= 1.0)) throw std::invalid_argument("exponent p must lie in [1, inf]");
  const double ph = canonical_exponent(p);
  const OperatorHandle op(ball, k, options.threads);
  const OperatorHandle adjoint(ball, k.conj(), options.threads);
  const int D = k.support_radius();

  LowerBoundResult best;
  for (int r = D; r <= ball.radius(); ++r) {
    LowerBoundResult here = k.is_real()
                                ? TrialSearch<double>(ball, op, adjoint, ph, options, r).run()
                                : TrialSearch<cplx>(ball, op, adjoint, ph, options, r).run();
    if (here.value > best.value) {
      best.value = here.value;
      best.witness = here.witness;
      best.radius = here.radius;
    }
    if (r == ball.radius()) best.iterations = here.iterations;
  }
  // Allowance for rounding in the two norm evaluations behind each ratio.
  best.value *= 1.0 - ratio_rounding(k);
  return best;
}

double opnorm_lower(const TreeBall& ball, const RadialKernel& k, double p,
                    const NormEstimateOptions& options) {
  return opnorm_lower_detailed(ball, k, p, options).value;
}

}  // namespace treeharm
