#include "treeharm/census.hpp"

#include <ostream>
#include <stdexcept>

#include "treeharm/horocycle.hpp"

namespace treeharm {

std::int64_t HorocycleMeasure::shell_mass(int m) const {
  if (m < 0) return 0;
  if (m == 0) return 1;
  return cumulative_mass(m) - cumulative_mass(m - 1);
}

std::int64_t HorocycleMeasure::cumulative_mass(int j) const {
  if (j < 0) throw std::invalid_argument("stabiliser mass q^j needs j >= 0 here");
  std::int64_t v = 1;
  for (int i = 0; i < j; ++i) v *= params_.q();
  return v;
}

std::int64_t HorocycleMeasure::cell_mass(int j, int m) const {
  if (j >= 0) {
    if (m < j) return 0;
    return m == j ? cumulative_mass(j) : shell_mass(m);
  }
  return m < 0 ? 0 : shell_mass(m);
}

std::int64_t HorocycleMeasure::cell_vertex_count(int j, int m) const {
  const std::int64_t mass = cell_mass(j, m);
  if (mass == 0) return 0;
  if (j <= 0) return mass * cumulative_mass(-j);
  const std::int64_t qj = cumulative_mass(j);
  if (mass % qj != 0) throw std::logic_error("horocycle cell mass not divisible by q^j");
  return mass / qj;
}

std::int64_t CensusTable::nu(int j, int d) const {
  auto it = by_distance.find({j, d});
  return it == by_distance.end() ? 0 : it->second;
}

std::int64_t CensusTable::cell(int j, int m) const {
  auto it = by_merge.find({j, m});
  return it == by_merge.end() ? 0 : it->second;
}

std::int64_t CensusTable::horocycle_size(int j) const {
  std::int64_t n = 0;
  for (auto it = by_distance.lower_bound({j, INT32_MIN}); it != by_distance.end() && it->first.first == j;
       ++it)
    n += it->second;
  return n;
}

CensusTable horocycle_census(const TreeBall& ball) {
  CensusTable t;
  t.q = ball.q();
  t.radius = ball.radius();
  for (Vertex x = 0; x < ball.size(); ++x) {
    const int j = ball.height(x);
    const int d = ball.depth(x);
    const int m = ball.merge_height(x);
    ++t.by_distance[{j, d}];
    ++t.by_merge[{j, m}];
    if (d != HorocycleMeasure::cell_distance(j, m)) ++t.max_law_violations;
  }
  return t;
}

void write_census_csv(const CensusTable& table, std::ostream& out) {
  out << "j,d,m,count\n";
  for (const auto& [key, count] : table.by_merge) {
    const auto [j, m] = key;
    out << j << ',' << HorocycleMeasure::cell_distance(j, m) << ',' << m << ',' << count << '\n';
  }
}

std::int64_t census_model_mismatches(const CensusTable& table) {
  const HorocycleMeasure mu{TreeParams(table.q)};
  const int R = table.radius;
  std::int64_t bad = 0;
  for (int j = -R; j <= R; ++j) {
    for (int m = 0; m <= R; ++m) {
      const int d = HorocycleMeasure::cell_distance(j, m);
      if (d > R) continue;
      if (table.cell(j, m) != mu.cell_vertex_count(j, m)) ++bad;
    }
    // ν(j, d) at distances not of the form max(2m − j, j) must be empty.
    for (int d = 0; d <= R; ++d) {
      std::int64_t expected = 0;
      for (int m = 0; m <= R; ++m)
        if (HorocycleMeasure::cell_distance(j, m) == d) expected += mu.cell_vertex_count(j, m);
      if (table.nu(j, d) != expected) ++bad;
    }
  }
  for (const auto& [key, count] : table.by_merge)
    if (key.second > R || key.first < -R || key.first > R) bad += count;
  return bad;
}

Rational haar_identity_check(const TreeBall& ball, std::span<const Rational> f, int margin) {
  if (static_cast<Vertex>(f.size()) != ball.size()) {
    throw std::invalid_argument("function must have one value per ball vertex");
  }
  if (margin < 0 || margin > ball.radius()) throw std::invalid_argument("margin outside [0, R]");
  const int inner = ball.radius() - margin;
  Rational direct = 0;
  std::map<std::pair<int, int>, std::pair<Rational, std::int64_t>> cells;
  for (Vertex x = 0; x < ball.size(); ++x) {
    if (f[x] != 0 && ball.depth(x) > inner) {
      throw std::invalid_argument("support reaches within the margin of the ball boundary");
    }
    direct += f[x];
    auto& c = cells[{ball.height(x), ball.merge_height(x)}];
    c.first += f[x];
    ++c.second;
  }

  const HorocycleMeasure mu(ball.params());
  Rational via_horocycles = 0;
  for (const auto& [key, agg] : cells) {
    const auto [j, m] = key;
    if (agg.first == 0) continue;
    const Rational mean = agg.first / Rational(agg.second);
    Rational weight = Rational(mu.cell_mass(j, m));
    if (j >= 0)
      weight /= Rational(mu.cumulative_mass(j));
    else
      weight *= Rational(mu.cumulative_mass(-j));
    via_horocycles += weight * mean;
  }
  const Rational diff = direct - via_horocycles;
  return diff < 0 ? Rational(-diff) : diff;
}

}  // namespace treeharm
