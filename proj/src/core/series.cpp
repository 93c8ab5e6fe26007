#include "wco/series.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>

#include "wco/errors.hpp"

namespace wco {

namespace {

using Coeffs = std::vector<Complex>;

constexpr std::size_t kMaxPolyDegree = 4096;

bool on_cut(Complex w) { return w.imag() == 0.0 && w.real() <= 0.0; }

Coeffs cauchy(const Coeffs& a, const Coeffs& b, std::size_t size) {
  Coeffs out(size, Complex(0.0));
  for (std::size_t i = 0; i < a.size() && i < size; ++i) {
    if (a[i] == Complex(0.0)) continue;
    for (std::size_t j = 0; j < b.size() && i + j < size; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Exact coefficients of a polynomial tree, or nullopt if the tree is not
// a polynomial in z.
std::optional<Coeffs> exact_polynomial(const NodePtr& n) {
  switch (n->op) {
    case Op::Var:
      return Coeffs{Complex(0.0), Complex(1.0)};
    case Op::Const:
      return Coeffs{n->value};
    case Op::Add:
    case Op::Sub: {
      auto a = exact_polynomial(n->lhs);
      auto b = exact_polynomial(n->rhs);
      if (!a || !b) return std::nullopt;
      Coeffs out(std::max(a->size(), b->size()), Complex(0.0));
      for (std::size_t i = 0; i < a->size(); ++i) out[i] += (*a)[i];
      for (std::size_t i = 0; i < b->size(); ++i) {
        out[i] += n->op == Op::Add ? (*b)[i] : -(*b)[i];
      }
      return out;
    }
    case Op::Mul: {
      auto a = exact_polynomial(n->lhs);
      auto b = exact_polynomial(n->rhs);
      if (!a || !b || a->size() + b->size() > kMaxPolyDegree) return std::nullopt;
      return cauchy(*a, *b, a->size() + b->size() - 1);
    }
    case Op::PowReal: {
      if (!expr::is_integral(n->exponent) || n->exponent < 0.0) return std::nullopt;
      auto base = exact_polynomial(n->lhs);
      if (!base) return std::nullopt;
      const auto k = static_cast<std::size_t>(n->exponent);
      if ((base->size() - 1) * k + 1 > kMaxPolyDegree) return std::nullopt;
      Coeffs out{Complex(1.0)};
      for (std::size_t i = 0; i < k; ++i) out = cauchy(out, *base, out.size() + base->size() - 1);
      return out;
    }
    default:
      return std::nullopt;
  }
}

// Returns (b0, b1) if the tree is exactly b0 + b1 z.
std::optional<std::pair<Complex, Complex>> affine(const NodePtr& n) {
  auto p = exact_polynomial(n);
  if (!p) return std::nullopt;
  for (std::size_t i = 2; i < p->size(); ++i) {
    if ((*p)[i] != Complex(0.0)) return std::nullopt;
  }
  const Complex b0 = (*p)[0];
  const Complex b1 = p->size() > 1 ? (*p)[1] : Complex(0.0);
  return std::make_pair(b0, b1);
}

Coeffs reciprocal(const Coeffs& b, std::size_t size) {
  Coeffs q(size, Complex(0.0));
  q[0] = 1.0 / b[0];
  for (std::size_t n = 1; n < size; ++n) {
    Complex acc(0.0);
    for (std::size_t k = 1; k <= n && k < b.size(); ++k) acc += b[k] * q[n - k];
    q[n] = -acc / b[0];
  }
  return q;
}

Coeffs int_power(const Coeffs& base, long long k, std::size_t size) {
  Coeffs b = base;
  if (k < 0) {
    b = reciprocal(base, size);
    k = -k;
  }
  Coeffs out(size, Complex(0.0));
  out[0] = 1.0;
  while (k != 0) {
    if (k & 1) out = cauchy(out, b, size);
    k >>= 1;
    if (k != 0) b = cauchy(b, b, size);
  }
  return out;
}

// (b0 + b1 z)^p = b0^p (1 - c z)^p with c = -b1/b0.
Coeffs affine_power(Complex b0, Complex b1, double p, std::size_t size) {
  const Complex c = -b1 / b0;
  const Complex scale = std::exp(p * std::log(b0));
  Coeffs out(size);
  if (p < 0.0) {
    Complex cj(1.0);
    for (std::size_t j = 0; j < size; ++j) {
      out[j] = scale * gen_binom(-p, static_cast<int>(j)) * cj;
      cj *= c;
    }
  } else {
    // binom(p, j) (-c)^j by the ratio recurrence
    Complex term = scale;
    for (std::size_t j = 0; j < size; ++j) {
      out[j] = term;
      term *= -c * ((p - static_cast<double>(j)) / static_cast<double>(j + 1));
    }
  }
  return out;
}

// The recurrences below follow from L' g = g', P' g = p g' P and E' = g' E.
Coeffs series_log(const Coeffs& g, std::size_t size) {
  Coeffs out(size, Complex(0.0));
  out[0] = std::log(g[0]);
  for (std::size_t n = 1; n < size; ++n) {
    Complex acc = static_cast<double>(n) * g[n];
    for (std::size_t k = 1; k < n; ++k) acc -= static_cast<double>(k) * out[k] * g[n - k];
    out[n] = acc / (static_cast<double>(n) * g[0]);
  }
  return out;
}

Coeffs series_power(const Coeffs& g, double p, std::size_t size) {
  Coeffs out(size, Complex(0.0));
  out[0] = std::exp(p * std::log(g[0]));
  for (std::size_t n = 1; n < size; ++n) {
    Complex acc(0.0);
    for (std::size_t k = 1; k <= n; ++k) {
      acc += (p * static_cast<double>(k) - static_cast<double>(n - k)) * g[k] * out[n - k];
    }
    out[n] = acc / (static_cast<double>(n) * g[0]);
  }
  return out;
}

Coeffs series_exp(const Coeffs& g, std::size_t size) {
  Coeffs out(size, Complex(0.0));
  out[0] = std::exp(g[0]);
  for (std::size_t n = 1; n < size; ++n) {
    Complex acc(0.0);
    for (std::size_t k = 1; k <= n; ++k) acc += static_cast<double>(k) * g[k] * out[n - k];
    out[n] = acc / static_cast<double>(n);
  }
  return out;
}

std::optional<Coeffs> closed(const NodePtr& n, std::size_t size) {
  switch (n->op) {
    case Op::Var: {
      Coeffs out(size, Complex(0.0));
      if (size > 1) out[1] = 1.0;
      return out;
    }
    case Op::Const: {
      Coeffs out(size, Complex(0.0));
      out[0] = n->value;
      return out;
    }
    case Op::Add:
    case Op::Sub: {
      auto a = closed(n->lhs, size);
      auto b = closed(n->rhs, size);
      if (!a || !b) return std::nullopt;
      for (std::size_t i = 0; i < size; ++i) (*a)[i] += n->op == Op::Add ? (*b)[i] : -(*b)[i];
      return a;
    }
    case Op::Mul: {
      auto a = closed(n->lhs, size);
      auto b = closed(n->rhs, size);
      if (!a || !b) return std::nullopt;
      return cauchy(*a, *b, size);
    }
    case Op::Div: {
      auto a = closed(n->lhs, size);
      auto b = closed(n->rhs, size);
      if (!a || !b || (*b)[0] == Complex(0.0)) return std::nullopt;
      return cauchy(*a, reciprocal(*b, size), size);
    }
    case Op::PowReal: {
      if (expr::is_integral(n->exponent)) {
        auto b = closed(n->lhs, size);
        if (!b || (n->exponent < 0.0 && (*b)[0] == Complex(0.0))) return std::nullopt;
        return int_power(*b, static_cast<long long>(n->exponent), size);
      }
      if (auto ab = affine(n->lhs)) {
        if (on_cut(ab->first)) return std::nullopt;
        return affine_power(ab->first, ab->second, n->exponent, size);
      }
      auto b = closed(n->lhs, size);
      if (!b || on_cut((*b)[0])) return std::nullopt;
      return series_power(*b, n->exponent, size);
    }
    case Op::Log: {
      auto ab = affine(n->lhs);
      if (!ab) {
        auto b = closed(n->lhs, size);
        if (!b || on_cut((*b)[0])) return std::nullopt;
        return series_log(*b, size);
      }
      if (on_cut(ab->first)) return std::nullopt;
      // log(b0) + log(1 - c z) = log(b0) - Σ_{j>=1} c^j z^j / j
      const Complex c = -ab->second / ab->first;
      Coeffs out(size, Complex(0.0));
      out[0] = std::log(ab->first);
      Complex cj = c;
      for (std::size_t j = 1; j < size; ++j) {
        out[j] = -cj / static_cast<double>(j);
        cj *= c;
      }
      return out;
    }
    case Op::Exp: {
      auto b = closed(n->lhs, size);
      if (!b) return std::nullopt;
      return series_exp(*b, size);
    }
    case Op::Compose:
      return std::nullopt;
  }
  return std::nullopt;
}

int default_samples(int degree) { return std::max(256, 8 * (degree + 1)); }

Coeffs circle_coefficients(const AnalyticFn& f, int degree, double radius, int samples) {
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<Complex> pts(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) pts[k] = std::polar(radius, two_pi * k / samples);
  const auto values = f.eval_batch(pts);

  Coeffs out(static_cast<std::size_t>(degree) + 1);
  for (int j = 0; j <= degree; ++j) {
    Complex acc(0.0);
    for (int k = 0; k < samples; ++k) {
      const long long phase = (static_cast<long long>(j) * k) % samples;
      acc += values[k] * std::polar(1.0, -two_pi * static_cast<double>(phase) / samples);
    }
    out[j] = acc / (static_cast<double>(samples) * std::pow(radius, j));
  }
  return out;
}

}  // namespace

double gen_binom(double alpha, int j) {
  if (!(alpha > 0.0) || j < 0) throw ValidationError("gen_binom requires alpha > 0 and j >= 0");
  const double log_value = std::lgamma(j + alpha) - std::lgamma(alpha) - std::lgamma(j + 1.0);
  if (log_value > std::log(DBL_MAX)) throw OverflowError("gen_binom overflow");
  return std::exp(log_value);
}

std::optional<std::vector<Complex>> closed_form_series(const AnalyticFn& f, int degree) {
  if (degree < 0) throw ValidationError("series degree must be >= 0");
  return closed(f.node(), static_cast<std::size_t>(degree) + 1);
}

PowerSeries taylor_quadrature(const AnalyticFn& f, int degree, const TaylorOptions& opts) {
  if (degree < 0) throw ValidationError("series degree must be >= 0");
  if (!(opts.radius > 0.0 && opts.radius < 1.0)) {
    throw ValidationError("quadrature radius must lie in (0, 1)");
  }
  const int samples = opts.samples == 0 ? default_samples(degree) : opts.samples;
  if (samples < 4 * (degree + 1)) throw ValidationError("need at least 4(N+1) circle samples");

  PowerSeries series;
  series.coeffs = circle_coefficients(f, degree, opts.radius, samples);
  const double second_radius = std::min(1.1 * opts.radius, 0.99);
  if (second_radius > opts.radius) {
    const auto check = circle_coefficients(f, degree, second_radius, samples);
    double scale = 0.0;
    double diff = 0.0;
    for (std::size_t j = 0; j < check.size(); ++j) {
      scale = std::max(scale, std::abs(series.coeffs[j]));
      diff = std::max(diff, std::abs(series.coeffs[j] - check[j]));
    }
    series.radius_discrepancy = scale > 0.0 ? diff / scale : diff;
    series.precision_warning = series.radius_discrepancy > opts.consistency_tol;
  }
  return series;
}

PowerSeries taylor(const AnalyticFn& f, int degree, const TaylorOptions& opts) {
  if (auto exact = closed_form_series(f, degree)) {
    PowerSeries series;
    series.coeffs = std::move(*exact);
    series.closed_form = true;
    return series;
  }
  return taylor_quadrature(f, degree, opts);
}

}  // namespace wco
