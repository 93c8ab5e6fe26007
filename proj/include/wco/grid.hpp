#pragma once

#include <span>
#include <vector>

#include "wco/expr.hpp"

namespace wco {

struct Shell {
  int k = 0;            // radius 1 - 2^{-k}; k = 0 is the origin
  double radius = 0.0;
  int count = 1;
  std::size_t offset = 0;  // index of the shell's first point
};

/// Boundary-refined sampling of the disc: the origin plus shells at radii
/// 1 - 2^{-k}, k = 1..K, with 64 * 2^{min(k,6)} equally spaced angles each
/// (angle 0 included).
class DiscGrid {
 public:
  explicit DiscGrid(int levels);

  int levels() const noexcept { return levels_; }
  /// Shell 0 is the origin; shells()[k] has radius 1 - 2^{-k}.
  const std::vector<Shell>& shells() const noexcept { return shells_; }
  std::span<const Complex> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  /// 1 - |z|^2 for each point.
  std::span<const double> one_minus_abs2() const noexcept { return weight_base_; }
  std::span<const double> log_one_minus_abs2() const noexcept { return log_weight_base_; }
  /// Shell index of each point.
  std::span<const int> shell_of() const noexcept { return shell_of_; }

  /// (1 - |z|^2)^alpha at every point.
  std::vector<double> weights(double alpha) const;

  static double shell_radius(int k);
  static int shell_count(int k);

 private:
  int levels_;
  std::vector<Shell> shells_;
  std::vector<Complex> points_;
  std::vector<double> weight_base_;
  std::vector<double> log_weight_base_;
  std::vector<int> shell_of_;
};

/// Shared K = 14 grid used to certify self-maps and find weight witnesses.
const DiscGrid& verification_grid();

}  // namespace wco
