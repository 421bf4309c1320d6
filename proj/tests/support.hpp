// Shared test helpers: seeded generators and slow reference oracles that do
// not go through the library's fast paths.
#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <vector>

#include "treeharm/census.hpp"
#include "treeharm/radial_kernel.hpp"
#include "treeharm/tree_ball.hpp"
#include "treeharm/zline.hpp"

namespace testing {

using treeharm::cplx;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int range(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  cplx complex_unit() { return {uniform(-1, 1), uniform(-1, 1)}; }

  treeharm::RadialKernel kernel(int q, int D, bool nonnegative = false, bool real = false) {
    std::vector<cplx> v(D + 1);
    for (auto& x : v) {
      if (nonnegative) x = uniform(0.0, 1.0);
      else if (real) x = uniform(-1.0, 1.0);
      else x = complex_unit();
    }
    return {treeharm::TreeParams(q), v};
  }

  treeharm::ZKernel zkernel(int q, int lo, int hi) {
    std::vector<cplx> v(hi - lo + 1);
    for (auto& x : v) x = complex_unit();
    return {treeharm::TreeParams(q), lo, v};
  }

  treeharm::Rational small_rational() {
    return treeharm::Rational(range(-9, 9), range(1, 7));
  }

 private:
  std::uint64_t state_;
};

/// Adjacency lists of a ball, read off its parent array only.
inline std::vector<std::vector<treeharm::Vertex>> adjacency(const treeharm::TreeBall& ball) {
  std::vector<std::vector<treeharm::Vertex>> adj(ball.size());
  for (treeharm::Vertex v = 1; v < ball.size(); ++v) {
    adj[v].push_back(ball.parent(v));
    adj[ball.parent(v)].push_back(v);
  }
  return adj;
}

inline std::vector<int> bfs_distances(const std::vector<std::vector<treeharm::Vertex>>& adj, treeharm::Vertex src) {
  std::vector<int> dist(adj.size(), -1);
  std::deque<treeharm::Vertex> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto w : adj[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

/// Dense y = A f with A[x][y] = k(d(x, y)) from BFS distances.
inline std::vector<cplx> dense_convolve(const treeharm::TreeBall& ball, const treeharm::RadialKernel& k,
                                        const std::vector<cplx>& f) {
  const auto adj = adjacency(ball);
  std::vector<cplx> out(ball.size());
  for (treeharm::Vertex y = 0; y < ball.size(); ++y) {
    if (f[y] == cplx{}) continue;
    const auto dist = bfs_distances(adj, y);
    for (treeharm::Vertex x = 0; x < ball.size(); ++x) out[x] += k(dist[x]) * f[y];
  }
  return out;
}

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace testing
