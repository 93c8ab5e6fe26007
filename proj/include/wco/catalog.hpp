#pragma once

#include <span>
#include <string>

#include "wco/expr.hpp"
#include "wco/grid.hpp"

namespace wco::catalog {

// Closed-form builders. These do not validate the self-map property;
// wrap them in a SelfMap for that.

/// (a - z) / (1 - conj(a) z)
AnalyticFn blaschke(Complex a);
/// Π_i (a_i - z) / (1 - conj(a_i) z)
AnalyticFn blaschke_product(std::span<const Complex> zeros);
AnalyticFn dilation(double r);
AnalyticFn monomial(int k);
/// ((1+z)^s - (1-z)^s) / ((1+z)^s + (1-z)^s)
AnalyticFn lens(double s);

/// (1-|w|^2)^2 / (1 - conj(w) z)^{α+1} - (1-|w|^2) / (1 - conj(w) z)^α.
/// Vanishes at w with derivative conj(w) (1-|w|^2)^{-α} there.
AnalyticFn test_fn_f(double alpha, Complex w);

/// (α+1)(1-|w|^2)/(1 - conj(w) z)^α - α(1-|w|^2)^2/(1 - conj(w) z)^{α+1}.
/// Takes the value (1-|w|^2)^{1-α} at w with vanishing derivative.
AnalyticFn test_fn_h(double alpha, Complex w);

/// With t = log(1/(1-|w|^2)) and L(z) = log(1/(1 - conj(w) z)):
/// corrected:  3 L^2 / t - 2 L^3 / t^2   (value t and zero slope at w)
/// uncorrected: (-1/log(1-|w|^2)) (3 L^2 - 2 L^3)
/// Throws DegenerateError when t < 1e-8.
AnalyticFn test_fn_g(Complex w, bool corrected = true);

/// An analytic self-map certified on a sampling grid.
class SelfMap {
 public:
  /// Throws ValidationError if |φ(z)| >= 1 at any grid point.
  explicit SelfMap(AnalyticFn fn, const DiscGrid& grid = verification_grid());

  const AnalyticFn& fn() const noexcept { return fn_; }
  double sup_modulus_estimate() const noexcept { return sup_modulus_; }
  /// sup estimate <= 1 - 1e-3
  bool interior() const noexcept { return interior_; }

  Complex operator()(Complex z) const { return fn_(z); }

 private:
  AnalyticFn fn_;
  double sup_modulus_ = 0.0;
  bool interior_ = false;
};

SelfMap identity_map();
SelfMap dilation_map(double r);
SelfMap monomial_map(int k);
SelfMap blaschke_map(Complex a);
SelfMap blaschke_product_map(std::span<const Complex> zeros);
SelfMap lens_map(double s);

/// A weight ψ with a stored point where it does not vanish.
class Weight {
 public:
  /// Throws ValidationError unless |ψ(z0)| > 1e-12.
  Weight(AnalyticFn fn, Complex nonzero_witness);

  /// Takes the first grid point (origin first) where ψ is nonzero;
  /// throws ValidationError if ψ vanishes on the whole grid.
  static Weight find_witness(AnalyticFn fn, const DiscGrid& grid = verification_grid());

  const AnalyticFn& fn() const noexcept { return fn_; }
  Complex nonzero_witness() const noexcept { return witness_; }
  Complex operator()(Complex z) const { return fn_(z); }

 private:
  AnalyticFn fn_;
  Complex witness_;
};

enum class Family { F, G, H };

std::string to_string(Family family);
Family family_from_string(const std::string& name);

struct TestFnSpec {
  Family family = Family::F;
  double alpha = 1.0;  // unused for G
  Complex w{};
  bool corrected = true;  // G only

  /// Throws ValidationError on |w| >= 1 or an out-of-range alpha.
  AnalyticFn build() const;
};

}  // namespace wco::catalog
