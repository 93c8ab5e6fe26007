#include "wco/vector_space.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "wco/bloch.hpp"
#include "wco/errors.hpp"
#include "wco/parallel.hpp"

namespace wco {

namespace {

constexpr double kIdentityTol = 1e-10;

// Derivative of every component on the grid, component-major.
std::vector<std::vector<Complex>> derivative_table(const VecFn& F, const DiscGrid& grid) {
  std::vector<std::vector<Complex>> out;
  out.reserve(F.dim());
  for (const auto& c : F.components()) out.push_back(parallel_eval(c.derivative(), grid.points()));
  return out;
}

struct GridSup {
  double value = 0.0;
  std::size_t index = 0;
};

GridSup vec_grid_sup(const std::vector<std::vector<Complex>>& table,
                     std::span<const double> weights) {
  GridSup best;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    double n2 = 0.0;
    for (const auto& comp : table) n2 += std::norm(comp[i]);
    const double v = std::sqrt(n2) * weights[i];
    if (v > best.value) best = {v, i};
  }
  return best;
}

double functional_grid_norm(const Functional& u, std::span<const Complex> at_origin,
                            const std::vector<std::vector<Complex>>& table,
                            std::span<const double> weights) {
  double sup = 0.0;
  std::vector<Complex> v(table.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    for (std::size_t c = 0; c < table.size(); ++c) v[c] = table[c][i];
    sup = std::max(sup, std::abs(u.apply(v)) * weights[i]);
  }
  return std::abs(u.apply(at_origin)) + sup;
}

}  // namespace

VecFn::VecFn(std::vector<AnalyticFn> components) : components_(std::move(components)) {
  if (components_.empty()) throw ValidationError("VecFn needs d >= 1 components");
}

std::vector<Complex> VecFn::operator()(Complex z) const {
  std::vector<Complex> out;
  out.reserve(dim());
  for (const auto& c : components_) out.push_back(c(z));
  return out;
}

VecFn VecFn::tensor(const AnalyticFn& f, std::span<const Complex> x) {
  std::vector<AnalyticFn> comps;
  for (const Complex& xi : x) comps.push_back(xi * f);
  return VecFn(std::move(comps));
}

VecFn VecFn::constant(std::span<const Complex> x) {
  std::vector<AnalyticFn> comps;
  for (const Complex& xi : x) comps.push_back(AnalyticFn::constant(xi));
  return VecFn(std::move(comps));
}

double euclidean_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& c : v) s += std::norm(c);
  return std::sqrt(s);
}

Functional::Functional(std::vector<Complex> u) : u_(std::move(u)) {
  if (u_.empty()) throw ValidationError("functional needs d >= 1");
  if (std::abs(euclidean_norm(u_) - 1.0) > 1e-12) {
    throw ValidationError("functional must have unit norm");
  }
}

Functional Functional::normalized(std::vector<Complex> u) {
  const double n = euclidean_norm(u);
  if (!(n > 0.0)) throw ValidationError("cannot normalize the zero vector");
  for (auto& c : u) c /= n;
  return Functional(std::move(u));
}

Complex Functional::apply(std::span<const Complex> v) const {
  if (v.size() != u_.size()) throw ValidationError("functional dimension mismatch");
  Complex acc(0.0);
  for (std::size_t i = 0; i < u_.size(); ++i) acc += std::conj(u_[i]) * v[i];
  return acc;
}

AnalyticFn Functional::compose(const VecFn& F) const {
  if (F.dim() != u_.size()) throw ValidationError("functional dimension mismatch");
  AnalyticFn out = std::conj(u_[0]) * F[0];
  for (std::size_t i = 1; i < u_.size(); ++i) out = out + std::conj(u_[i]) * F[i];
  return out;
}

double vec_bloch_norm(const VecFn& F, double alpha, const DiscGrid& grid) {
  if (!(alpha > 0.0)) throw ValidationError("alpha must be > 0");
  const auto table = derivative_table(F, grid);
  const auto weights = grid.weights(alpha);
  return euclidean_norm(F(Complex(0.0))) + vec_grid_sup(table, weights).value;
}

std::vector<Functional> sample_functionals(const VecFn& F, double alpha, const DiscGrid& grid,
                                           int random_directions, std::uint64_t seed) {
  const std::size_t d = F.dim();
  std::vector<Functional> out;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Complex> e(d, Complex(0.0));
    e[i] = 1.0;
    out.emplace_back(std::move(e));
  }
  const Complex rotations[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      for (const Complex& w : rotations) {
        std::vector<Complex> v(d, Complex(0.0));
        v[i] = 1.0;
        v[j] = w;
        out.push_back(Functional::normalized(std::move(v)));
      }
    }
  }

  const auto origin = F(Complex(0.0));
  if (euclidean_norm(origin) > 0.0) out.push_back(Functional::normalized(origin));
  const auto table = derivative_table(F, grid);
  const auto weights = grid.weights(alpha);
  const auto best = vec_grid_sup(table, weights);
  std::vector<Complex> at_best(d);
  for (std::size_t c = 0; c < d; ++c) at_best[c] = table[c][best.index];
  if (euclidean_norm(at_best) > 0.0) out.push_back(Functional::normalized(at_best));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int k = 0; k < random_directions; ++k) {
    std::vector<Complex> v(d);
    for (auto& c : v) c = Complex(gauss(rng), gauss(rng));
    out.push_back(Functional::normalized(std::move(v)));
  }
  return out;
}

double weak_norm(const VecFn& F, double alpha, const DiscGrid& grid, int directions,
                 std::uint64_t seed) {
  if (directions < 2 * static_cast<int>(F.dim())) {
    throw ValidationError("weak_norm needs directions >= 2d");
  }
  const auto functionals = sample_functionals(F, alpha, grid, directions, seed);
  const auto table = derivative_table(F, grid);
  const auto weights = grid.weights(alpha);
  const auto origin = F(Complex(0.0));
  double best = 0.0;
  for (const auto& u : functionals) {
    best = std::max(best, functional_grid_norm(u, origin, table, weights));
  }
  return best;
}

VecFn apply_wco_vec(const AnalyticFn& psi, const AnalyticFn& phi, const VecFn& F) {
  std::vector<AnalyticFn> comps;
  for (const auto& c : F.components()) comps.push_back(apply_wco(psi, phi, c));
  return VecFn(std::move(comps));
}

VecFn apply_wco_vec(const catalog::Weight& psi, const catalog::SelfMap& phi, const VecFn& F) {
  return apply_wco_vec(psi.fn(), phi.fn(), F);
}

std::vector<IdentityCheck> check_prop1_factorizations(const catalog::Weight& psi,
                                                      const catalog::SelfMap& phi,
                                                      const AnalyticFn& f,
                                                      std::span<const Complex> x,
                                                      const Functional& xstar,
                                                      std::span<const Complex> sample) {
  if (x.size() != xstar.dim()) throw ValidationError("x and x* dimensions differ");
  if (std::abs(xstar.apply(x) - 1.0) > 1e-12) throw ValidationError("<x*, x> must equal 1");

  auto relative = [](Complex got, Complex want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
  };

  IdentityCheck scalar{"W = j2 o Wvec o j1", 0.0, sample.size(), true};
  const AnalyticFn lhs = xstar.compose(apply_wco_vec(psi, phi, VecFn::tensor(f, x)));
  const AnalyticFn rhs = apply_wco(psi, phi, f);
  double worst = 0.0;
  for (const Complex& z : sample) {
    const Complex a = lhs(z);
    const Complex b = rhs(z);
    scalar.max_abs_deviation = std::max(scalar.max_abs_deviation, std::abs(a - b));
    worst = std::max(worst, relative(a, b));
  }
  scalar.pass = worst <= kIdentityTol;

  const std::size_t d = x.size();
  IdentityCheck identity{"I = j4 o Wvec o j3", 0.0, d, true};
  const Complex z0 = psi.nonzero_witness();
  const Complex psi_z0 = psi(z0);
  worst = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Complex> e(d, Complex(0.0));
    e[k] = 1.0;
    const auto image = apply_wco_vec(psi, phi, VecFn::constant(e))(z0);
    for (std::size_t c = 0; c < d; ++c) {
      const Complex got = image[c] / psi_z0;
      identity.max_abs_deviation = std::max(identity.max_abs_deviation, std::abs(got - e[c]));
      worst = std::max(worst, relative(got, e[c]));
    }
  }
  identity.pass = worst <= kIdentityTol;
  return {scalar, identity};
}

NormTransferReport check_norm_transfer(const AnalyticFn& psi, const AnalyticFn& phi,
                                       const VecFn& F, double alpha, double beta,
                                       const DiscGrid& grid, int directions,
                                       std::uint64_t seed) {
  const VecFn image = apply_wco_vec(psi, phi, F);
  const auto functionals = sample_functionals(F, alpha, grid, directions, seed);

  NormTransferReport report;
  report.identity = {"||x* o (Wvec F)|| = ||W (x* o F)||", 0.0, functionals.size(), true};
  report.functionals = functionals.size();
  double worst = 0.0;
  const NormOptions grid_only{false, {}};
  for (const auto& u : functionals) {
    const double a = bloch_norm(u.compose(image), beta, grid, grid_only);
    const double b = bloch_norm(apply_wco(psi, phi, u.compose(F)), beta, grid, grid_only);
    report.identity.max_abs_deviation = std::max(report.identity.max_abs_deviation, std::abs(a - b));
    worst = std::max(worst, std::abs(a - b) / std::max(1e-300, std::max(a, b)));
  }
  report.identity.pass = worst <= kIdentityTol;

  report.weak_norm_source = weak_norm(F, alpha, grid, directions, seed);
  report.weak_norm_image = weak_norm(image, beta, grid, directions, seed);
  report.ratio = report.weak_norm_source > 0.0 ? report.weak_norm_image / report.weak_norm_source
                                               : 0.0;
  return report;
}

}  // namespace wco
