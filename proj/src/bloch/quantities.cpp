#include <algorithm>
#include <cmath>
#include <limits>

#include "wco/bloch.hpp"
#include "wco/errors.hpp"
#include "wco/parallel.hpp"
#include "wco/simd/kernels.hpp"

namespace wco {

namespace {

constexpr double kJitter = 1.1;
constexpr double kAlphaOneTol = 1e-12;

void require_exponents(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw ValidationError("alpha and beta must be > 0");
  }
}

// Growth ratio s_last / s_prev with 0/0 = 0 and x/0 = inf.
double growth_ratio(double prev, double last) {
  if (last <= 0.0) return 0.0;
  if (prev <= 0.0) return std::numeric_limits<double>::infinity();
  return last / prev;
}

bool non_monotone(double a, double b, double c) {
  const bool up_down = b > kJitter * a && c * kJitter < b;
  const bool down_up = b * kJitter < a && c > kJitter * b;
  return up_down || down_up;
}

}  // namespace

double q1(const AnalyticFn& psi, const AnalyticFn& phi, double alpha, double beta, Complex z) {
  const Complex w = phi(z);
  return std::pow(one_minus_abs2(z), beta) / std::pow(one_minus_abs2(w), alpha) *
         std::abs(psi(z)) * std::abs(phi.derivative()(z));
}

double q2(const AnalyticFn& psi, const AnalyticFn& phi, double beta, Complex z) {
  const Complex w = phi(z);
  return std::pow(one_minus_abs2(z), beta) * -std::log(one_minus_abs2(w)) *
         std::abs(psi.derivative()(z));
}

double q3(const AnalyticFn& psi, const AnalyticFn& phi, double alpha, double beta, Complex z) {
  const Complex w = phi(z);
  return std::pow(one_minus_abs2(z), beta) / std::pow(one_minus_abs2(w), alpha - 1.0) *
         std::abs(psi.derivative()(z));
}

AnalyticFn apply_wco(const AnalyticFn& psi, const AnalyticFn& phi, const AnalyticFn& f) {
  return psi * compose(f, phi);
}

AnalyticFn apply_wco(const catalog::Weight& psi, const catalog::SelfMap& phi,
                     const AnalyticFn& f) {
  return apply_wco(psi.fn(), phi.fn(), f);
}

QReport q_report(const AnalyticFn& psi, const AnalyticFn& phi, double alpha, double beta,
                 const DiscGrid& grid, int tail_depth) {
  require_exponents(alpha, beta);
  if (tail_depth < 1) throw ValidationError("tail depth M must be >= 1");
  const auto pts = grid.points();
  const std::size_t n = pts.size();

  const auto phi_arr = simd::ComplexArray::from(parallel_eval(phi, pts));
  const auto psi_mod = simd::modulus(simd::ComplexArray::from(parallel_eval(psi, pts)));
  const auto dpsi_mod =
      simd::modulus(simd::ComplexArray::from(parallel_eval(psi.derivative(), pts)));
  const auto dphi_mod =
      simd::modulus(simd::ComplexArray::from(parallel_eval(phi.derivative(), pts)));
  const auto phi_mod = simd::modulus(phi_arr);
  const auto phi_base = simd::one_minus_abs2(phi_arr);
  const auto log_z = grid.log_one_minus_abs2();

  QReport report;
  report.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(phi_mod[i] < 1.0)) throw ValidationError("phi leaves the unit disc on the grid");
    const double log_phi = std::log(phi_base[i]);
    PointQ& p = report.points[i];
    p.z = pts[i];
    p.phi_modulus = phi_mod[i];
    p.q1 = std::exp(beta * log_z[i] - alpha * log_phi) * psi_mod[i] * dphi_mod[i];
    p.q2 = std::exp(beta * log_z[i]) * -log_phi * dpsi_mod[i];
    p.q3 = std::exp(beta * log_z[i] - (alpha - 1.0) * log_phi) * dpsi_mod[i];
    report.sup_q1 = std::max(report.sup_q1, p.q1);
    report.sup_q2 = std::max(report.sup_q2, p.q2);
    report.sup_q3 = std::max(report.sup_q3, p.q3);
  }

  for (const Shell& s : grid.shells()) {
    ShellRow row{s.k, s.radius, 0.0, 0.0, 0.0};
    for (std::size_t i = s.offset; i < s.offset + static_cast<std::size_t>(s.count); ++i) {
      row.sup_q1 = std::max(row.sup_q1, report.points[i].q1);
      row.sup_q2 = std::max(row.sup_q2, report.points[i].q2);
      row.sup_q3 = std::max(row.sup_q3, report.points[i].q3);
    }
    report.shells.push_back(row);
  }

  for (int m = 1; m <= tail_depth; ++m) {
    TailRow row;
    row.m = m;
    row.delta = std::ldexp(1.0, -m);
    const double threshold = 1.0 - row.delta;
    for (const PointQ& p : report.points) {
      if (p.phi_modulus < threshold) continue;
      row.vacuous = false;
      row.sup_q1 = std::max(row.sup_q1, p.q1);
      row.sup_q2 = std::max(row.sup_q2, p.q2);
      row.sup_q3 = std::max(row.sup_q3, p.q3);
    }
    report.tail.push_back(row);
  }
  return report;
}

std::string to_string(AlphaCase c) {
  switch (c) {
    case AlphaCase::Below:
      return "alpha<1";
    case AlphaCase::One:
      return "alpha=1";
    case AlphaCase::Above:
      return "alpha>1";
  }
  return "?";
}

AlphaCase alpha_case(double alpha) {
  if (std::abs(alpha - 1.0) <= kAlphaOneTol) return AlphaCase::One;
  return alpha < 1.0 ? AlphaCase::Below : AlphaCase::Above;
}

Classification classify(const AnalyticFn& psi, const AnalyticFn& phi, double alpha, double beta,
                        const DiscGrid& grid, const ClassifyOptions& opts) {
  if (grid.levels() < 8) throw ValidationError("classify needs a grid with K >= 8");
  if (!(opts.tol_bounded > 0.0) || !(opts.tol_compact > 0.0)) {
    throw ValidationError("tolerances must be > 0");
  }

  Classification c;
  c.alpha = alpha;
  c.beta = beta;
  c.alpha_case = alpha_case(alpha);
  c.tolerances = opts;
  c.evidence = q_report(psi, phi, alpha, beta, grid, opts.tail_depth);

  std::vector<std::string> required{"q1"};
  if (c.alpha_case == AlphaCase::One) required.push_back("q2");
  if (c.alpha_case == AlphaCase::Above) required.push_back("q3");

  auto pick = [](const auto& row, const std::string& q) {
    if (q == "q1") return row.sup_q1;
    if (q == "q2") return row.sup_q2;
    return row.sup_q3;
  };

  const auto& shells = c.evidence.shells;
  const auto& tail = c.evidence.tail;
  bool bounded = true;
  bool vanishing = true;
  bool jitter = false;
  for (const auto& q : required) {
    QuantityEvidence e;
    e.name = q;
    e.sup = q == "q1" ? c.evidence.sup_q1 : q == "q2" ? c.evidence.sup_q2 : c.evidence.sup_q3;
    const std::size_t last = shells.size() - 1;
    const double a = pick(shells[last - 2], q);
    const double b = pick(shells[last - 1], q);
    const double s = pick(shells[last], q);
    e.growth_ratio = growth_ratio(b, s);
    e.bounded = std::isfinite(e.sup) && e.growth_ratio <= opts.tol_bounded;
    e.jitter = non_monotone(a, b, s);

    for (std::size_t m = 1; m < tail.size(); ++m) {
      if (tail[m].vacuous || tail[m - 1].vacuous) continue;
      if (pick(tail[m], q) > kJitter * pick(tail[m - 1], q)) e.jitter = true;
    }
    e.final_tail_sup = tail.back().vacuous ? 0.0 : pick(tail.back(), q);
    e.vanishing = e.final_tail_sup <= opts.tol_compact * e.sup;

    bounded = bounded && e.bounded;
    vanishing = vanishing && e.vanishing;
    jitter = jitter || e.jitter;
    c.quantities.push_back(e);
  }

  c.bounded = bounded;
  c.compact = bounded && vanishing;
  c.bounded_verdict = jitter ? Verdict::Inconclusive : (bounded ? Verdict::True : Verdict::False);
  c.compact_verdict =
      jitter ? Verdict::Inconclusive : (c.compact ? Verdict::True : Verdict::False);
  return c;
}

Classification classify(const catalog::Weight& psi, const catalog::SelfMap& phi, double alpha,
                        double beta, const DiscGrid& grid, const ClassifyOptions& opts) {
  return classify(psi.fn(), phi.fn(), alpha, beta, grid, opts);
}

std::vector<LowerBoundRow> lower_bound_check(const AnalyticFn& psi, const AnalyticFn& phi,
                                             double alpha, double beta,
                                             std::span<const Complex> z_points,
                                             const DiscGrid& grid) {
  require_exponents(alpha, beta);
  std::vector<LowerBoundRow> rows;
  for (const Complex& z : z_points) {
    LowerBoundRow row;
    row.z = z;
    row.phi_z = phi(z);
    const AnalyticFn f = catalog::test_fn_f(alpha, row.phi_z);
    const AnalyticFn image = apply_wco(psi, phi, f);

    const Complex seed[1] = {z};
    row.lhs = bloch_norm(image, beta, grid, NormOptions{true, seed});
    row.rhs = std::abs(row.phi_z) * q1(psi, phi, alpha, beta, z);

    const double weight = std::pow(one_minus_abs2(z), beta);
    row.intermediate = std::abs(image.derivative()(z)) * weight;
    row.chain = std::abs(psi(z)) * std::abs(f.derivative()(row.phi_z)) *
                std::abs(phi.derivative()(z)) * weight;

    auto close = [](double a, double b) {
      return std::abs(a - b) <= 1e-8 * std::max(std::abs(a), std::abs(b)) ||
             (a == 0.0 && b == 0.0);
    };
    row.bound_pass = row.lhs >= row.rhs * (1.0 - 1e-6);
    row.intermediate_pass = close(row.intermediate, row.rhs);
    row.chain_pass = close(row.intermediate, row.chain);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace wco
