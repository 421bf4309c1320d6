#include "treeharm/tree_ball.hpp"

#include <string>

namespace treeharm {

std::int64_t TreeBall::vertex_count(int q, int radius) {
  std::int64_t total = 1;
  std::int64_t shell = q + 1;
  for (int d = 1; d <= radius; ++d) {
    total += shell;
    if (total > kMaxVertices * 16) return total;  // caller rejects; avoid overflow
    shell *= q;
  }
  return total;
}

TreeBall::TreeBall(TreeParams params, int radius) : params_(params), radius_(radius) {
  if (radius < 0) throw std::invalid_argument("ball radius must be >= 0");
  const std::int64_t n = vertex_count(params.q(), radius);
  if (n > kMaxVertices) {
    throw std::invalid_argument("ball of radius " + std::to_string(radius) + " for q = " +
                                std::to_string(params.q()) + " exceeds the cap of " +
                                std::to_string(kMaxVertices) + " vertices");
  }
  const int q = params.q();
  parent_.assign(n, -1);
  first_child_.assign(n, -1);
  depth_.assign(n, 0);
  gamma_index_.assign(n, kOffGeodesic);

  Vertex next = 1;
  for (Vertex v = 0; v < n; ++v) {
    if (depth_[v] == radius) continue;
    first_child_[v] = next;
    const int count = v == 0 ? q + 1 : q;
    for (int c = 0; c < count; ++c, ++next) {
      parent_[next] = v;
      depth_[next] = depth_[v] + 1;
    }
  }

  gamma_.assign(2 * radius + 1, -1);
  gamma_[radius] = 0;
  gamma_index_[0] = 0;
  for (int i = 1; i <= radius; ++i) {
    const Vertex up = first_child_[gamma_[radius + i - 1]];
    const Vertex down = i == 1 ? first_child_[0] + 1 : first_child_[gamma_[radius - i + 1]];
    gamma_[radius + i] = up;
    gamma_[radius - i] = down;
    gamma_index_[up] = i;
    gamma_index_[down] = -i;
  }

  height_.assign(n, 0);
  const Vertex top = gamma_[2 * radius];
  for (Vertex v = 0; v < n; ++v) height_[v] = radius - distance(v, top);
}

Vertex TreeBall::prefix_size(int r) const {
  if (r < 0 || r > radius_) throw std::out_of_range("sub-ball radius outside [0, R]");
  return static_cast<Vertex>(vertex_count(q(), r));
}

int TreeBall::child_count(Vertex x) const {
  if (first_child_[check(x)] < 0) return 0;
  return x == 0 ? q() + 1 : q();
}

Vertex TreeBall::gamma(int i) const {
  if (i < -radius_ || i > radius_) throw std::out_of_range("geodesic index outside [−R, R]");
  return gamma_[radius_ + i];
}

int TreeBall::distance(Vertex x, Vertex y) const {
  check(x);
  check(y);
  int d = 0;
  while (depth_[x] > depth_[y]) x = parent_[x], ++d;
  while (depth_[y] > depth_[x]) y = parent_[y], ++d;
  while (x != y) x = parent_[x], y = parent_[y], d += 2;
  return d;
}

int TreeBall::merge_height(Vertex x) const {
  check(x);
  // Each vertex has exactly one neighbour one level higher; follow it until
  // the walk lands on [o, ω⁺).
  while (gamma_index_[x] < 0) {
    const int h = height_[x];
    Vertex up = -1;
    if (parent_[x] >= 0 && height_[parent_[x]] == h + 1) up = parent_[x];
    for (Vertex c = first_child_[x]; up < 0 && c >= 0 && c < first_child_[x] + child_count(x); ++c)
      if (height_[c] == h + 1) up = c;
    if (up < 0) throw std::logic_error("height function has no ascent inside the ball");
    x = up;
  }
  return gamma_index_[x];
}

Vertex TreeBall::check(Vertex x) const {
  if (x < 0 || x >= static_cast<Vertex>(parent_.size())) {
    throw std::out_of_range("unknown vertex id " + std::to_string(x));
  }
  return x;
}

}  // namespace treeharm
