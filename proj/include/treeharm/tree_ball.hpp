#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "treeharm/params.hpp"

namespace treeharm {

using Vertex = std::int32_t;

/// Explicit ball B_R(o) of the homogeneous tree, vertices numbered in BFS
/// order from o = 0. Children of a vertex are contiguous; the first R + 1
/// levels of a larger ball carry the same numbering, so B_r is always the
/// index prefix [0, vertex_count(q, r)).
///
/// The reference geodesic γ runs through o: γ_i (i > 0) is the first-child
/// chain and γ_{−i} starts at the second child of o, then follows first
/// children. Heights are taken with respect to the end ω⁺ of γ⁺.
class TreeBall {
 public:
  static constexpr std::int64_t kMaxVertices = 2'000'000;

  TreeBall(TreeParams params, int radius);

  /// 1 + (q+1)(q^R − 1)/(q − 1).
  static std::int64_t vertex_count(int q, int radius);

  const TreeParams& params() const noexcept { return params_; }
  int q() const noexcept { return params_.q(); }
  int radius() const noexcept { return radius_; }
  Vertex size() const noexcept { return static_cast<Vertex>(parent_.size()); }
  /// Number of vertices of the sub-ball B_r.
  Vertex prefix_size(int r) const;

  /// |x| = d(x, o).
  int depth(Vertex x) const { return depth_[check(x)]; }
  /// Parent toward o; −1 for o itself.
  Vertex parent(Vertex x) const { return parent_[check(x)]; }
  /// First child, or −1 when x lies on the boundary sphere.
  Vertex first_child(Vertex x) const { return first_child_[check(x)]; }
  int child_count(Vertex x) const;

  /// γ_i for −R ≤ i ≤ R.
  Vertex gamma(int i) const;
  /// i such that x = γ_i, or kOffGeodesic.
  static constexpr int kOffGeodesic = -(1 << 30);
  int geodesic_index(Vertex x) const { return gamma_index_[check(x)]; }

  /// Graph distance, by climbing to the lowest common ancestor.
  int distance(Vertex x, Vertex y) const;
  /// h(x) = R − d(x, γ_R); agrees with lim_i (i − d(x, γ_i)).
  int height(Vertex x) const { return height_[check(x)]; }
  /// Height of the point where the ray [x, ω⁺) joins the ray [o, ω⁺).
  /// Computed by walking up the height function, independently of depth.
  int merge_height(Vertex x) const;

  std::span<const Vertex> parents() const noexcept { return parent_; }
  std::span<const Vertex> first_children() const noexcept { return first_child_; }
  std::span<const int> depths() const noexcept { return depth_; }
  std::span<const int> heights() const noexcept { return height_; }

  /// Calls fn(y, d(x, y)) for every y in the ball with d(x, y) ≤ reach.
  template <typename Fn>
  void for_each_within(Vertex x, int reach, Fn&& fn) const {
    walk(x, -1, 0, reach, fn);
  }

 private:
  Vertex check(Vertex x) const;

  template <typename Fn>
  void walk(Vertex v, Vertex from, int d, int reach, Fn& fn) const {
    fn(v, d);
    if (d == reach) return;
    const Vertex p = parent_[v];
    if (p >= 0 && p != from) walk(p, v, d + 1, reach, fn);
    const Vertex c0 = first_child_[v];
    if (c0 < 0) return;
    const int n = child_count(v);
    for (Vertex c = c0; c < c0 + n; ++c)
      if (c != from) walk(c, v, d + 1, reach, fn);
  }

  TreeParams params_;
  int radius_;
  std::vector<Vertex> parent_;
  std::vector<Vertex> first_child_;
  std::vector<int> depth_;
  std::vector<int> height_;
  std::vector<int> gamma_index_;
  std::vector<Vertex> gamma_;  // γ_{−R} .. γ_R, stored at offset R
};

}  // namespace treeharm
