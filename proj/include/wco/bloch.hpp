#pragma once

// Bloch-type norms, the q1, q2, q3 quantities and the
// boundedness/compactness classifier for W f = ψ · (f ∘ φ).

#include <span>
#include <string>
#include <vector>

#include "wco/catalog.hpp"
#include "wco/expr.hpp"
#include "wco/grid.hpp"

namespace wco {

enum class Verdict { False, True, Inconclusive };

std::string to_string(Verdict v);

struct NormOptions {
  /// Local compass search from every shell's best point (and the seeds).
  bool refine = true;
  /// Extra starting points for the refinement.
  std::span<const Complex> seeds = {};
};

/// |f(0)| + sup_z |f'(z)| (1-|z|^2)^α over the grid, improved by local
/// refinement. Every evaluated point lies in the disc, so the result is a
/// lower bound of the true norm; it is non-decreasing in the grid depth.
double bloch_norm(const AnalyticFn& f, double alpha, const DiscGrid& grid,
                  const NormOptions& opts = {});

/// Per-shell sup of |f'(z)| (1-|z|^2)^α; entry k belongs to shell k.
std::vector<double> bloch_shell_sups(const AnalyticFn& f, double alpha, const DiscGrid& grid);

// Pointwise quantities. q3 is evaluated for any α, though only used for α > 1.
double q1(const AnalyticFn& psi, const AnalyticFn& phi, double alpha, double beta, Complex z);
double q2(const AnalyticFn& psi, const AnalyticFn& phi, double beta, Complex z);
double q3(const AnalyticFn& psi, const AnalyticFn& phi, double alpha, double beta, Complex z);

/// ψ · (f ∘ φ); its derivative tree is ψ'(f∘φ) + ψ (f'∘φ) φ'.
AnalyticFn apply_wco(const AnalyticFn& psi, const AnalyticFn& phi, const AnalyticFn& f);
AnalyticFn apply_wco(const catalog::Weight& psi, const catalog::SelfMap& phi, const AnalyticFn& f);

struct PointQ {
  Complex z;
  double phi_modulus = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;
};

struct TailRow {
  int m = 0;
  double delta = 0.0;  // 2^{-m}; the set is {|φ(z)| >= 1 - delta}
  double sup_q1 = 0.0;
  double sup_q2 = 0.0;
  double sup_q3 = 0.0;
  bool vacuous = true;
};

struct ShellRow {
  int k = 0;
  double radius = 0.0;
  double sup_q1 = 0.0;
  double sup_q2 = 0.0;
  double sup_q3 = 0.0;
};

struct QReport {
  std::vector<PointQ> points;
  double sup_q1 = 0.0;
  double sup_q2 = 0.0;
  double sup_q3 = 0.0;
  std::vector<TailRow> tail;
  std::vector<ShellRow> shells;
};

/// q-values at every grid point with global, shell-wise and tail sups
/// for m = 1..tail_depth.
QReport q_report(const AnalyticFn& psi, const AnalyticFn& phi, double alpha, double beta,
                 const DiscGrid& grid, int tail_depth);

enum class AlphaCase { Below, One, Above };

std::string to_string(AlphaCase c);
AlphaCase alpha_case(double alpha);

struct ClassifyOptions {
  /// Max allowed growth of the shell sup between the last two shells.
  double tol_bounded = 1.2;
  /// Tail sup at m = tail_depth, relative to the overall sup, must not exceed this.
  double tol_compact = 1e-2;
  int tail_depth = 10;
};

struct QuantityEvidence {
  std::string name;  // "q1", "q2", "q3"
  double sup = 0.0;
  double growth_ratio = 0.0;  // last shell sup / previous shell sup
  double final_tail_sup = 0.0;
  bool bounded = false;
  bool vanishing = false;
  bool jitter = false;
};

struct Classification {
  double alpha = 0.0;
  double beta = 0.0;
  AlphaCase alpha_case = AlphaCase::One;
  bool bounded = false;
  bool compact = false;
  /// Inconclusive when shell or tail statistics were non-monotone beyond
  /// 10% jitter; bounded/compact then hold the heuristic's best guess.
  Verdict bounded_verdict = Verdict::False;
  Verdict compact_verdict = Verdict::False;
  std::vector<QuantityEvidence> quantities;
  QReport evidence;
  ClassifyOptions tolerances;

  bool determinate() const {
    return bounded_verdict != Verdict::Inconclusive && compact_verdict != Verdict::Inconclusive;
  }
};

/// Case dispatch: α < 1 uses q1; α = 1 uses q1, q2; α > 1 uses q1, q3.
/// Requires grid depth K >= 8.
Classification classify(const AnalyticFn& psi, const AnalyticFn& phi, double alpha, double beta,
                        const DiscGrid& grid, const ClassifyOptions& opts = {});
Classification classify(const catalog::Weight& psi, const catalog::SelfMap& phi, double alpha,
                        double beta, const DiscGrid& grid, const ClassifyOptions& opts = {});

struct LowerBoundRow {
  Complex z;
  Complex phi_z;
  double lhs = 0.0;           // ‖W f‖_{B_β} with f the F test function at φ(z)
  double rhs = 0.0;           // |φ(z)| q1(α, β, z)
  double intermediate = 0.0;  // |(W f)'(z)| (1-|z|^2)^β
  double chain = 0.0;         // |ψ(z)| |f'(φ(z))| |φ'(z)| (1-|z|^2)^β
  bool bound_pass = false;
  bool intermediate_pass = false;
  bool chain_pass = false;
  bool pass() const { return bound_pass && intermediate_pass && chain_pass; }
};

/// For each z: checks lhs >= rhs (1 - 1e-6), intermediate = rhs and
/// intermediate = chain to 1e-8 relative.
std::vector<LowerBoundRow> lower_bound_check(const AnalyticFn& psi, const AnalyticFn& phi,
                                             double alpha, double beta,
                                             std::span<const Complex> z_points,
                                             const DiscGrid& grid);

/// True when the outermost shell sup of |f'|(1-|z|^2)^α is below tol and
/// the last three shell sups are non-increasing (10% jitter allowed);
/// Inconclusive when the jitter allowance is exceeded.
Verdict is_little_bloch(const AnalyticFn& f, double alpha, const DiscGrid& grid, double tol);

}  // namespace wco
