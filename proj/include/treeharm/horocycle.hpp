#pragma once

#include <cstdint>

#include "treeharm/params.hpp"

namespace treeharm {

/// Haar measure μ of N on the shells {v ∈ N : |v·o| = 2m}: μ_0 = 1 and
/// μ_m = q^m − q^{m−1}, so that the stabiliser of γ_j has mass q^j.
class HorocycleMeasure {
 public:
  explicit HorocycleMeasure(TreeParams params) : params_(params) {}

  /// μ_m as an exact integer.
  std::int64_t shell_mass(int m) const;
  /// Σ_{m ≤ j} μ_m = q^j.
  std::int64_t cumulative_mass(int j) const;

  /// Mass of {v ∈ N : v σ^j·o has merge height m}. For j ≥ 0 the cell m = j
  /// collects every shell m' ≤ j; for j < 0 the cell m = 0 is shell 0.
  /// Zero when the cell is empty (m < max(j, 0)).
  std::int64_t cell_mass(int j, int m) const;

  /// Number of vertices on the horocycle of height j with merge height m,
  /// q^{−j} · cell_mass(j, m). Always an integer.
  std::int64_t cell_vertex_count(int j, int m) const;

  /// Distance from o of the vertices in cell (j, m): max(2m − j, j).
  static int cell_distance(int j, int m) noexcept { return 2 * m - j > j ? 2 * m - j : j; }

 private:
  TreeParams params_;
};

}  // namespace treeharm
