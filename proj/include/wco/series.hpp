#pragma once

#include <optional>
#include <vector>

#include "wco/expr.hpp"

namespace wco {

/// Truncated Taylor expansion c_0 + c_1 z + ... + c_N z^N at the origin.
struct PowerSeries {
  std::vector<Complex> coeffs;
  /// Set when the quadrature path saw the two circle radii disagree.
  bool precision_warning = false;
  /// Max relative disagreement between the two radii (0 for closed forms).
  double radius_discrepancy = 0.0;
  bool closed_form = false;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Γ(j+α)/(Γ(α) j!), the j-th coefficient of (1-w)^{-α}.
/// Throws ValidationError for α <= 0 or j < 0, OverflowError when the
/// value is not representable.
double gen_binom(double alpha, int j);

struct TaylorOptions {
  double radius = 0.7;
  /// 0 selects max(256, 8(N+1)).
  int samples = 0;
  /// Tolerance of the two-radius consistency check.
  double consistency_tol = 1e-8;
};

/// Taylor coefficients up to degree N. Trees built from polynomials,
/// products, quotients, logs and real powers of affine factors (1 - a z)
/// are expanded exactly; anything else falls back to circle quadrature.
PowerSeries taylor(const AnalyticFn& f, int degree, const TaylorOptions& opts = {});

/// Circle quadrature only: c_j ≈ (1/(M r^j)) Σ_k f(r ω^k) ω^{-jk}, with a
/// second pass at radius min(1.1 r, 0.99) for the consistency check.
PowerSeries taylor_quadrature(const AnalyticFn& f, int degree, const TaylorOptions& opts = {});

/// Exact expansion when the tree has one; std::nullopt otherwise.
std::optional<std::vector<Complex>> closed_form_series(const AnalyticFn& f, int degree);

}  // namespace wco
