#include <algorithm>
#include <cmath>
#include <numbers>

#include "wco/bloch.hpp"
#include "wco/errors.hpp"
#include "wco/parallel.hpp"
#include "wco/simd/kernels.hpp"

namespace wco {

namespace {

constexpr double kJitter = 1.1;

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be > 0");
}

struct ShellBest {
  double value = 0.0;
  Complex z;
};

// Per-shell max of |f'(z)| (1-|z|^2)^α and where it is attained.
std::vector<ShellBest> shell_maxima(const AnalyticFn& f, double alpha, const DiscGrid& grid) {
  const auto derivative = parallel_eval(f.derivative(), grid.points());
  const auto values = simd::ComplexArray::from(derivative);
  const auto weights = grid.weights(alpha);
  const auto& kernels = simd::active_kernels();

  std::vector<ShellBest> out;
  out.reserve(grid.shells().size());
  for (const Shell& s : grid.shells()) {
    const auto best = kernels.weighted_abs_max(values.re.data() + s.offset,
                                               values.im.data() + s.offset,
                                               weights.data() + s.offset,
                                               static_cast<std::size_t>(s.count));
    out.push_back({best.value, grid.points()[s.offset + best.index]});
  }
  return out;
}

// Compass search for a local max of |f'(z)| (1-|z|^2)^α in polar
// coordinates, confined to the annulus [r_lo, r_hi].
double refine_from(const AnalyticFn& derivative, double alpha, Complex seed, double r_lo,
                   double r_hi, double angle_step) {
  auto value = [&](double r, double theta) {
    const Complex z = std::polar(r, theta);
    return std::abs(derivative(z)) * std::pow(one_minus_abs2(z), alpha);
  };
  double r = std::clamp(std::abs(seed), r_lo, r_hi);
  double theta = std::arg(seed);
  double best = value(r, theta);
  double dr = (r_hi - r_lo) / 4.0;
  double dt = angle_step;
  for (int iter = 0; iter < 600 && (dr > 1e-15 || dt > 1e-15); ++iter) {
    const double cand_r[4] = {std::min(r + dr, r_hi), std::max(r - dr, r_lo), r, r};
    const double cand_t[4] = {theta, theta, theta + dt, theta - dt};
    int pick = -1;
    double pick_value = best;
    for (int c = 0; c < 4; ++c) {
      const double v = value(cand_r[c], cand_t[c]);
      if (v > pick_value) {
        pick_value = v;
        pick = c;
      }
    }
    if (pick < 0) {
      dr *= 0.5;
      dt *= 0.5;
    } else {
      r = cand_r[pick];
      theta = cand_t[pick];
      best = pick_value;
    }
  }
  return best;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::False:
      return "false";
    case Verdict::True:
      return "true";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::vector<double> bloch_shell_sups(const AnalyticFn& f, double alpha, const DiscGrid& grid) {
  require_alpha(alpha);
  std::vector<double> out;
  for (const auto& b : shell_maxima(f, alpha, grid)) out.push_back(b.value);
  return out;
}

double bloch_norm(const AnalyticFn& f, double alpha, const DiscGrid& grid,
                  const NormOptions& opts) {
  require_alpha(alpha);
  const double at_origin = std::abs(f(Complex(0.0)));
  const auto maxima = shell_maxima(f, alpha, grid);
  double sup = 0.0;
  for (const auto& b : maxima) sup = std::max(sup, b.value);

  if (opts.refine) {
    const AnalyticFn& derivative = f.derivative();
    // Annulus bounds depend only on the shell index, so a deeper grid
    // refines from a superset of starting points.
    for (std::size_t k = 0; k < maxima.size(); ++k) {
      const int kk = static_cast<int>(k);
      const double lo = DiscGrid::shell_radius(kk - 1);
      const double hi = DiscGrid::shell_radius(kk + 1);
      const double step = 2.0 * std::numbers::pi / DiscGrid::shell_count(std::max(kk, 1));
      sup = std::max(sup, refine_from(derivative, alpha, maxima[k].z, lo, hi, step));
    }
    for (const Complex& s : opts.seeds) {
      const double r = std::abs(s);
      if (!(r < 1.0)) throw DomainError("refinement seed outside the unit disc");
      const double gap = 1.0 - r;
      const double step = std::max(gap, 1e-6) / std::max(r, 1e-3);
      sup = std::max(sup, refine_from(derivative, alpha, s, std::max(0.0, r - gap),
                                      r + 0.5 * gap, std::min(step, 0.1)));
    }
  }
  return at_origin + sup;
}

Verdict is_little_bloch(const AnalyticFn& f, double alpha, const DiscGrid& grid, double tol) {
  const auto sups = bloch_shell_sups(f, alpha, grid);
  const std::size_t n = sups.size();
  const double a = sups[n - 3];
  const double b = sups[n - 2];
  const double c = sups[n - 1];
  if (!(c < tol)) return Verdict::False;
  if (b > kJitter * a || c > kJitter * b) return Verdict::Inconclusive;
  return Verdict::True;
}

}  // namespace wco
