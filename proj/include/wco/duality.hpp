#pragma once

// The pairing ⟨f, p⟩_α = Σ_j f̂(j) conj(a_j) ∫_0^1 s^{2j+1} (1-s^2)^{α-1} ds
// against polynomial probes p = Σ a_j z^j, and weak-null certificates for
// the F test-function family.

#include <span>
#include <vector>

#include "wco/bloch.hpp"
#include "wco/expr.hpp"

namespace wco {

struct Polynomial {
  std::vector<Complex> coeffs;  // a_0 .. a_N

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Complex operator()(Complex z) const;
  AnalyticFn to_fn() const;

  static Polynomial monomial(int k);
};

struct PairingResult {
  Complex value;
  double alpha = 0.0;
  int truncation_degree = 0;
  /// Always 0 for polynomial probes: only j <= deg p contributes.
  double remainder = 0.0;
  bool precision_warning = false;
};

/// ∫_0^1 s^{2j+1} (1-s^2)^{α-1} ds = B(j+1, α)/2, via log-gamma.
double beta_integral(int j, double alpha);

/// Σ_{j<=deg p} f̂(j) conj(a_j) r^{2j} beta_integral(j, α), with f̂ from
/// taylor(f, N_trunc). r = 1 is the boundary value; r < 1 is the dilated
/// pairing ∫ f(rz) conj(p(rz)) (1-|z|^2)^{α-1} before the limit.
PairingResult pair_poly(const AnalyticFn& f, const Polynomial& p, double alpha, int n_trunc,
                        double dilation = 1.0);

struct WeakNullRow {
  int n = 0;
  double w = 0.0;  // 1 - 2^{-n}
  double max_abs_pairing = 0.0;
  double max_coeff = 0.0;  // max_{j <= coeff_degree} |f̂(j)|
};

struct WeakNullReport {
  double alpha = 0.0;
  double tol = 0.0;
  int coeff_degree = 0;
  std::vector<WeakNullRow> rows;
  /// True when the last pairing is below tol and the last three decrease
  /// (10% jitter allowed); Inconclusive when the jitter allowance is
  /// exceeded. A finite surrogate for weak convergence to 0.
  Verdict certified = Verdict::False;
};

/// Runs the F family f_{w_n}, w_n = 1 - 2^{-n}, n = n0..n1, against the probes.
WeakNullReport weak_null_certificate(double alpha, int n0, int n1,
                                     std::span<const Polynomial> probes, double tol,
                                     int coeff_degree = 5);

}  // namespace wco
