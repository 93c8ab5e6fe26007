#include "wco/catalog.hpp"

#include <cmath>

#include "wco/errors.hpp"
#include "wco/simd/kernels.hpp"

namespace wco::catalog {

namespace {

void require_in_disc(Complex w, const char* what) {
  if (!(std::abs(w) < 1.0)) throw ValidationError(std::string(what) + ": |w| must be < 1");
}

void require_positive(double alpha, const char* what) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ValidationError(std::string(what) + ": alpha must be > 0");
  }
}

// 1 - conj(w) z
AnalyticFn kernel_base(Complex w) {
  return AnalyticFn::constant(1.0) - std::conj(w) * AnalyticFn::identity();
}

}  // namespace

AnalyticFn blaschke(Complex a) {
  require_in_disc(a, "blaschke");
  const auto z = AnalyticFn::identity();
  return (AnalyticFn::constant(a) - z) / kernel_base(a);
}

AnalyticFn blaschke_product(std::span<const Complex> zeros) {
  if (zeros.empty()) throw ValidationError("blaschke_product needs at least one zero");
  AnalyticFn out = blaschke(zeros.front());
  for (std::size_t i = 1; i < zeros.size(); ++i) out = out * blaschke(zeros[i]);
  return out;
}

AnalyticFn dilation(double r) {
  if (!(r >= 0.0 && r < 1.0)) throw ValidationError("dilation: r must lie in [0, 1)");
  return Complex(r) * AnalyticFn::identity();
}

AnalyticFn monomial(int k) {
  if (k < 1) throw ValidationError("monomial: k must be >= 1");
  return pow(AnalyticFn::identity(), static_cast<double>(k));
}

AnalyticFn lens(double s) {
  if (!(s > 0.0 && s < 1.0)) throw ValidationError("lens: s must lie in (0, 1)");
  const auto one = AnalyticFn::constant(1.0);
  const auto z = AnalyticFn::identity();
  const auto p = pow(one + z, s);
  const auto m = pow(one - z, s);
  return (p - m) / (p + m);
}

AnalyticFn test_fn_f(double alpha, Complex w) {
  require_positive(alpha, "test_fn_f");
  require_in_disc(w, "test_fn_f");
  const double d = one_minus_abs2(w);
  const auto base = kernel_base(w);
  return Complex(d * d) * pow(base, -(alpha + 1.0)) - Complex(d) * pow(base, -alpha);
}

AnalyticFn test_fn_h(double alpha, Complex w) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw ValidationError("test_fn_h: alpha must be > 1");
  }
  require_in_disc(w, "test_fn_h");
  const double d = one_minus_abs2(w);
  const auto base = kernel_base(w);
  return Complex((alpha + 1.0) * d) * pow(base, -alpha) -
         Complex(alpha * d * d) * pow(base, -(alpha + 1.0));
}

AnalyticFn test_fn_g(Complex w, bool corrected) {
  require_in_disc(w, "test_fn_g");
  const double t = -std::log1p(-std::norm(w));
  if (!(t >= 1e-8)) throw DegenerateError("test_fn_g: w too close to 0");
  const auto L = log(AnalyticFn::constant(1.0) / kernel_base(w));
  const auto L2 = pow(L, 2.0);
  const auto L3 = pow(L, 3.0);
  if (corrected) return Complex(3.0 / t) * L2 - Complex(2.0 / (t * t)) * L3;
  // Uncorrected form: the cubic term carries the same 1/t as the square.
  const double lead = -1.0 / std::log1p(-std::norm(w));
  return Complex(lead) * (Complex(3.0) * L2 - Complex(2.0) * L3);
}

SelfMap::SelfMap(AnalyticFn fn, const DiscGrid& grid) : fn_(std::move(fn)) {
  std::vector<Complex> values;
  try {
    values = fn_.eval_batch(grid.points());
  } catch (const Error& e) {
    throw ValidationError(std::string("not a self-map: ") + e.what());
  }
  const auto moduli = simd::modulus(simd::ComplexArray::from(values));
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (!(moduli[i] < 1.0)) {
      throw ValidationError("not a self-map: |phi(z)| >= 1 at grid point " + std::to_string(i));
    }
    sup_modulus_ = std::max(sup_modulus_, moduli[i]);
  }
  interior_ = sup_modulus_ <= 1.0 - 1e-3;
}

SelfMap identity_map() { return SelfMap(AnalyticFn::identity()); }
SelfMap dilation_map(double r) { return SelfMap(dilation(r)); }
SelfMap monomial_map(int k) { return SelfMap(monomial(k)); }
SelfMap blaschke_map(Complex a) { return SelfMap(blaschke(a)); }
SelfMap blaschke_product_map(std::span<const Complex> zeros) {
  return SelfMap(blaschke_product(zeros));
}
SelfMap lens_map(double s) { return SelfMap(lens(s)); }

Weight::Weight(AnalyticFn fn, Complex nonzero_witness)
    : fn_(std::move(fn)), witness_(nonzero_witness) {
  if (!(std::abs(fn_(witness_)) > 1e-12)) {
    throw ValidationError("weight vanishes at the supplied witness point");
  }
}

Weight Weight::find_witness(AnalyticFn fn, const DiscGrid& grid) {
  const auto values = fn.eval_batch(grid.points());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::abs(values[i]) > 1e-12) return Weight(std::move(fn), grid.points()[i]);
  }
  throw ValidationError("weight vanishes on the whole verification grid");
}

std::string to_string(Family family) {
  switch (family) {
    case Family::F:
      return "f";
    case Family::G:
      return "g";
    case Family::H:
      return "h";
  }
  return "?";
}

Family family_from_string(const std::string& name) {
  if (name == "f" || name == "F") return Family::F;
  if (name == "g" || name == "G") return Family::G;
  if (name == "h" || name == "H") return Family::H;
  throw ValidationError("unknown test-function family '" + name + "'");
}

AnalyticFn TestFnSpec::build() const {
  switch (family) {
    case Family::F:
      return test_fn_f(alpha, w);
    case Family::G:
      return test_fn_g(w, corrected);
    case Family::H:
      return test_fn_h(alpha, w);
  }
  throw ValidationError("unknown test-function family");
}

}  // namespace wco::catalog
