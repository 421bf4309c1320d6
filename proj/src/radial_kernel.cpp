#include "treeharm/radial_kernel.hpp"

#include <cmath>

namespace treeharm {

RadialKernel::RadialKernel(TreeParams params, std::vector<cplx> values)
    : params_(params), values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("radial kernel needs at least the value k(0)");
  }
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::invalid_argument("radial kernel values must be finite");
    }
  }
}

RadialKernel RadialKernel::delta(TreeParams params) { return {params, {cplx{1.0}}}; }

RadialKernel RadialKernel::sphere_indicator(TreeParams params, int radius) {
  if (radius < 0) throw std::invalid_argument("sphere radius must be >= 0");
  std::vector<cplx> v(radius + 1);
  v[radius] = 1.0;
  return {params, std::move(v)};
}

RadialKernel RadialKernel::ball_indicator(TreeParams params, int radius) {
  if (radius < 0) throw std::invalid_argument("ball radius must be >= 0");
  return {params, std::vector<cplx>(radius + 1, cplx{1.0})};
}

double RadialKernel::l1_norm() const {
  double s = std::abs(values_[0]);
  double shell = params_.q() + 1;
  for (std::size_t d = 1; d < values_.size(); ++d) {
    s += shell * std::abs(values_[d]);
    shell *= params_.q();
  }
  return s;
}

bool RadialKernel::is_real() const noexcept {
  for (const auto& v : values_)
    if (v.imag() != 0.0) return false;
  return true;
}

bool RadialKernel::is_point_mass() const noexcept {
  for (std::size_t d = 1; d < values_.size(); ++d)
    if (values_[d] != cplx{}) return false;
  return true;
}

RadialKernel RadialKernel::scaled(cplx c) const {
  auto v = values_;
  for (auto& x : v) x *= c;
  return {params_, std::move(v)};
}

RadialKernel RadialKernel::conj() const {
  auto v = values_;
  for (auto& x : v) x = std::conj(x);
  return {params_, std::move(v)};
}

RadialKernel RadialKernel::abs() const {
  auto v = values_;
  for (auto& x : v) x = std::abs(x);
  return {params_, std::move(v)};
}

}  // namespace treeharm
