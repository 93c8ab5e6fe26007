#include <algorithm>
#include <cmath>

#include "wco/catalog.hpp"
#include "wco/duality.hpp"
#include "wco/errors.hpp"
#include "wco/series.hpp"

namespace wco {

Complex Polynomial::operator()(Complex z) const {
  Complex acc(0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

AnalyticFn Polynomial::to_fn() const {
  const auto z = AnalyticFn::identity();
  AnalyticFn out = AnalyticFn::constant(0.0);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    out = out + coeffs[j] * pow(z, static_cast<double>(j));
  }
  return out;
}

Polynomial Polynomial::monomial(int k) {
  Polynomial p;
  p.coeffs.assign(static_cast<std::size_t>(k) + 1, Complex(0.0));
  p.coeffs.back() = 1.0;
  return p;
}

double beta_integral(int j, double alpha) {
  if (j < 0 || !(alpha > 0.0)) throw ValidationError("beta_integral needs j >= 0, alpha > 0");
  return 0.5 * std::exp(std::lgamma(j + 1.0) + std::lgamma(alpha) - std::lgamma(j + 1.0 + alpha));
}

PairingResult pair_poly(const AnalyticFn& f, const Polynomial& p, double alpha, int n_trunc,
                        double dilation) {
  if (p.coeffs.empty()) throw ValidationError("empty probe polynomial");
  if (n_trunc < p.degree()) throw ValidationError("truncation degree below probe degree");
  if (!(dilation > 0.0 && dilation <= 1.0)) throw ValidationError("dilation must lie in (0, 1]");

  const PowerSeries series = taylor(f, n_trunc);
  PairingResult result;
  result.alpha = alpha;
  result.truncation_degree = n_trunc;
  result.precision_warning = series.precision_warning;
  Complex acc(0.0);
  for (int j = 0; j <= p.degree(); ++j) {
    acc += series.coeffs[j] * std::conj(p.coeffs[j]) * std::pow(dilation, 2 * j) *
           beta_integral(j, alpha);
  }
  result.value = acc;
  return result;
}

WeakNullReport weak_null_certificate(double alpha, int n0, int n1,
                                     std::span<const Polynomial> probes, double tol,
                                     int coeff_degree) {
  if (probes.empty()) throw ValidationError("weak-null certificate needs probes");
  if (n0 < 1 || n1 < n0) throw ValidationError("need 1 <= n0 <= n1");

  WeakNullReport report;
  report.alpha = alpha;
  report.tol = tol;
  report.coeff_degree = coeff_degree;
  int max_probe_degree = 0;
  for (const auto& p : probes) max_probe_degree = std::max(max_probe_degree, p.degree());
  const int n_trunc = std::max(max_probe_degree, coeff_degree);

  for (int n = n0; n <= n1; ++n) {
    WeakNullRow row;
    row.n = n;
    row.w = 1.0 - std::ldexp(1.0, -n);
    const AnalyticFn f = catalog::test_fn_f(alpha, row.w);
    for (const auto& p : probes) {
      row.max_abs_pairing =
          std::max(row.max_abs_pairing, std::abs(pair_poly(f, p, alpha, n_trunc).value));
    }
    const PowerSeries s = taylor(f, coeff_degree);
    for (const Complex& c : s.coeffs) row.max_coeff = std::max(row.max_coeff, std::abs(c));
    report.rows.push_back(row);
  }

  const auto& rows = report.rows;
  const double last = rows.back().max_abs_pairing;
  bool jitter = false;
  for (std::size_t i = rows.size() >= 3 ? rows.size() - 2 : 1; i < rows.size(); ++i) {
    if (rows[i].max_abs_pairing > 1.1 * rows[i - 1].max_abs_pairing) jitter = true;
  }
  if (jitter) {
    report.certified = Verdict::Inconclusive;
  } else {
    report.certified = last < tol ? Verdict::True : Verdict::False;
  }
  return report;
}

}  // namespace wco
