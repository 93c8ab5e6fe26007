#include "wco/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wco/errors.hpp"
#include "wco/simd/kernels.hpp"

namespace wco {

double DiscGrid::shell_radius(int k) { return k <= 0 ? 0.0 : 1.0 - std::ldexp(1.0, -k); }

int DiscGrid::shell_count(int k) { return k <= 0 ? 1 : 64 << std::min(k, 6); }

DiscGrid::DiscGrid(int levels) : levels_(levels) {
  if (levels < 4) throw ValidationError("DiscGrid needs K >= 4");
  if (levels > 40) throw ValidationError("DiscGrid K too large for double precision radii");

  shells_.push_back(Shell{0, 0.0, 1, 0});
  points_.push_back(Complex(0.0));
  shell_of_.push_back(0);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int k = 1; k <= levels; ++k) {
    Shell s{k, shell_radius(k), shell_count(k), points_.size()};
    for (int j = 0; j < s.count; ++j) {
      points_.push_back(std::polar(s.radius, two_pi * j / s.count));
      shell_of_.push_back(k);
    }
    shells_.push_back(s);
  }

  weight_base_ = simd::one_minus_abs2(simd::ComplexArray::from(points_));
  log_weight_base_.resize(weight_base_.size());
  std::transform(weight_base_.begin(), weight_base_.end(), log_weight_base_.begin(),
                 [](double w) { return std::log(w); });
}

std::vector<double> DiscGrid::weights(double alpha) const {
  std::vector<double> out(log_weight_base_.size());
  std::transform(log_weight_base_.begin(), log_weight_base_.end(), out.begin(),
                 [alpha](double l) { return std::exp(alpha * l); });
  return out;
}

const DiscGrid& verification_grid() {
  static const DiscGrid grid(14);
  return grid;
}

}  // namespace wco
