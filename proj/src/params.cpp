#include "treeharm/params.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace treeharm {

TreeParams::TreeParams(int q) : q_(q), log_q_(0.0) {
  if (q < 2) {
    throw std::invalid_argument("tree parameter q must be >= 2, got " +
                                std::to_string(q));
  }
  log_q_ = std::log(static_cast<double>(q));
}

double TreeParams::plancherel_constant() const noexcept {
  return q_ * log_q_ / (4.0 * kPi * (q_ + 1));
}

double TreeParams::pow(double x) const { return std::pow(static_cast<double>(q_), x); }

cplx TreeParams::pow(cplx z) const { return std::exp(z * log_q_); }

double delta_of(double p) { return std::abs(1.0 / p - 0.5); }

double conjugate_exponent(double p) {
  if (p < 1.0) throw std::invalid_argument("exponent p must be >= 1");
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double canonical_exponent(double p) {
  if (p < 1.0) throw std::invalid_argument("exponent p must be >= 1");
  if (p <= 2.0) return p;
  return conjugate_exponent(p);
}

std::int64_t sphere_size(int q, int d) {
  if (d < 0) return 0;
  if (d == 0) return 1;
  std::int64_t n = q + 1;
  for (int i = 1; i < d; ++i) n *= q;
  return n;
}

bool is_power_of_two(std::int64_t n) noexcept { return n > 0 && (n & (n - 1)) == 0; }

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace treeharm
