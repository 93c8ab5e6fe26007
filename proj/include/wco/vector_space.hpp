#pragma once

// C^d-valued functions with the Euclidean norm, the componentwise
// operator W̃, weak norms and the factorization/norm-transfer checks.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wco/catalog.hpp"
#include "wco/expr.hpp"
#include "wco/grid.hpp"

namespace wco {

class VecFn {
 public:
  explicit VecFn(std::vector<AnalyticFn> components);

  std::size_t dim() const noexcept { return components_.size(); }
  const std::vector<AnalyticFn>& components() const noexcept { return components_; }
  const AnalyticFn& operator[](std::size_t i) const { return components_[i]; }

  std::vector<Complex> operator()(Complex z) const;

  /// z ↦ f(z) x
  static VecFn tensor(const AnalyticFn& f, std::span<const Complex> x);
  /// z ↦ x
  static VecFn constant(std::span<const Complex> x);

 private:
  std::vector<AnalyticFn> components_;
};

double euclidean_norm(std::span<const Complex> v);

/// A unit functional on C^d represented by u, acting as Σ conj(u_i) v_i.
class Functional {
 public:
  /// Throws ValidationError unless |‖u‖ - 1| <= 1e-12.
  explicit Functional(std::vector<Complex> u);
  /// Scales u to unit length; throws on the zero vector.
  static Functional normalized(std::vector<Complex> u);

  std::size_t dim() const noexcept { return u_.size(); }
  const std::vector<Complex>& vector() const noexcept { return u_; }

  Complex apply(std::span<const Complex> v) const;
  /// x* ∘ F as a scalar analytic function.
  AnalyticFn compose(const VecFn& F) const;

 private:
  std::vector<Complex> u_;
};

/// ‖F(0)‖ + max over the grid of ‖F'(z)‖ (1-|z|^2)^α.
double vec_bloch_norm(const VecFn& F, double alpha, const DiscGrid& grid);

/// Coordinate functionals, pairwise combinations (e_i + ω e_j)/√2 with
/// ω ∈ {1, i, -1, -i}, the exact maximizers of ‖F(0)‖ and of the grid
/// sup of ‖F'‖(1-|z|^2)^α, and `random_directions` seeded random vectors.
std::vector<Functional> sample_functionals(const VecFn& F, double alpha, const DiscGrid& grid,
                                           int random_directions, std::uint64_t seed);

/// max over sample_functionals of the grid Bloch norm of x* ∘ F; a lower
/// bound of the weak norm. Requires directions >= 2d.
double weak_norm(const VecFn& F, double alpha, const DiscGrid& grid, int directions,
                 std::uint64_t seed = 42);

VecFn apply_wco_vec(const AnalyticFn& psi, const AnalyticFn& phi, const VecFn& F);
VecFn apply_wco_vec(const catalog::Weight& psi, const catalog::SelfMap& phi, const VecFn& F);

struct IdentityCheck {
  std::string identity;
  double max_abs_deviation = 0.0;
  std::size_t samples = 0;
  bool pass = false;
};

/// W = j2 ∘ W̃ ∘ j1 at every sample z and I = j4 ∘ W̃ ∘ j3 on each basis
/// vector, to 1e-10 relative, with j1 f = f ⊗ x, j2 F = x* ∘ F,
/// j3 x = constant x and j4 F = F(z0)/ψ(z0), z0 the weight's witness.
std::vector<IdentityCheck> check_prop1_factorizations(const catalog::Weight& psi,
                                                      const catalog::SelfMap& phi,
                                                      const AnalyticFn& f,
                                                      std::span<const Complex> x,
                                                      const Functional& xstar,
                                                      std::span<const Complex> sample);

struct NormTransferReport {
  IdentityCheck identity;
  std::size_t functionals = 0;
  double weak_norm_source = 0.0;  // ‖F‖ in wB_α
  double weak_norm_image = 0.0;   // ‖W̃F‖ in wB_β
  /// weak_norm_image / weak_norm_source, an empirical lower bound on ‖W̃‖.
  double ratio = 0.0;
};

/// For each sampled x*: Bloch norm of x* ∘ (W̃F) equals that of W(x* ∘ F)
/// to 1e-10 relative.
NormTransferReport check_norm_transfer(const AnalyticFn& psi, const AnalyticFn& phi,
                                       const VecFn& F, double alpha, double beta,
                                       const DiscGrid& grid, int directions,
                                       std::uint64_t seed = 42);

}  // namespace wco
