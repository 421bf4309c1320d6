#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "treeharm/tree_ball.hpp"

namespace treeharm {

using Rational = boost::multiprecision::cpp_rational;

/// Vertex counts of a ball organised by horocycle.
struct CensusTable {
  int q = 0;
  int radius = 0;
  /// (height j, distance d) ↦ ν(j, d).
  std::map<std::pair<int, int>, std::int64_t> by_distance;
  /// (height j, merge height m) ↦ count.
  std::map<std::pair<int, int>, std::int64_t> by_merge;
  /// Vertices violating |x| = max(2m − h, h); empty on a correct ball.
  std::int64_t max_law_violations = 0;

  std::int64_t nu(int j, int d) const;
  std::int64_t cell(int j, int m) const;
  std::int64_t horocycle_size(int j) const;
};

CensusTable horocycle_census(const TreeBall& ball);

/// CSV with header "j,d,m,count", one row per nonempty (j, m) cell.
void write_census_csv(const CensusTable& table, std::ostream& out);

/// Compares the census against the shell model of HorocycleMeasure on every
/// cell inside the ball; returns the number of mismatching cells.
std::int64_t census_model_mismatches(const CensusTable& table);

/// |Σ_x f(x) − Σ_j q^{−j} Σ_m μ(cell j,m) · mean_{cell} f|, in exact
/// arithmetic. f is indexed by vertex and must have ball.size() entries.
/// Entries outside B_{R − margin} must vanish.
Rational haar_identity_check(const TreeBall& ball, std::span<const Rational> f, int margin = 0);

}  // namespace treeharm
