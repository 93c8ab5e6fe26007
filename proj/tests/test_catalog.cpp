#include <doctest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "wco/bloch.hpp"
#include "wco/catalog.hpp"
#include "wco/errors.hpp"

using namespace wco;
using namespace wco::catalog;

TEST_CASE("self-map examples") {
  CHECK(std::abs(dilation_map(0.5)(0.8) - 0.4) < 1e-15);
  CHECK(std::abs(blaschke_map(0.5)(0.0) - 0.5) < 1e-15);
  CHECK(std::abs(lens_map(0.5)(0.0)) < 1e-15);
  CHECK(dilation_map(0.5).interior());
  CHECK_FALSE(identity_map().interior());
  CHECK(identity_map().sup_modulus_estimate() < 1.0);
  const Complex zeros[3] = {0.2, Complex(0.0, 0.6), Complex(-0.5, -0.5)};
  const auto bp = blaschke_product_map(zeros);
  for (const Complex& a : zeros) CHECK(std::abs(bp(a)) < 1e-15);
  CHECK(monomial_map(3)(Complex(0.5)).real() == doctest::Approx(0.125));
}

TEST_CASE("Blaschke factors are unimodular on the circle") {
  const auto b = blaschke(Complex(0.3, -0.6));
  for (int k = 0; k < 16; ++k) {
    const Complex p = std::polar(1.0 - 1e-12, 2.0 * M_PI * k / 16.0);
    CHECK(std::abs(b(p)) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("self-map validation") {
  const auto z = AnalyticFn::identity();
  CHECK_THROWS_AS(SelfMap(1.5 * z), ValidationError);
  CHECK_THROWS_AS(SelfMap(AnalyticFn::constant(1.0)), ValidationError);
  CHECK_THROWS_AS(dilation(1.0), ValidationError);
  CHECK_THROWS_AS(blaschke(Complex(0.8, 0.8)), ValidationError);
  CHECK_THROWS_AS(monomial(0), ValidationError);
  CHECK_THROWS_AS(lens(1.0), ValidationError);
  CHECK_NOTHROW(dilation(0.0));
}

TEST_CASE("weights need a nonzero witness") {
  const auto z = AnalyticFn::identity();
  CHECK_THROWS_AS(Weight(z, 0.0), ValidationError);
  CHECK_NOTHROW(Weight(z, 0.5));
  const auto w = Weight::find_witness(z);
  CHECK(std::abs(w(w.nonzero_witness())) > 1e-12);
  CHECK_THROWS_AS(Weight::find_witness(AnalyticFn::constant(0.0)), ValidationError);
}

TEST_CASE("test-function oracle values") {
  const auto f = test_fn_f(0.5, 0.9);
  CHECK(std::abs(f(0.9)) < 1e-14);
  CHECK(std::abs(f.derivative()(0.9) - 2.064741604835055893) < 1e-13);
  const auto h = test_fn_h(2.0, 0.9);
  CHECK(std::abs(h(0.9) - 5.263157894736842105) < 1e-13);
  CHECK(std::abs(h.derivative()(0.9)) < 1e-11);
  const auto g = test_fn_g(0.99);
  CHECK(std::abs(g(0.99) - 3.917035547251690340) < 1e-13);
  CHECK(std::abs(g.derivative()(0.99)) < 1e-10);
  const auto uncorrected = test_fn_g(0.99, false);
  CHECK(std::abs(uncorrected(0.99) + 18.93522831511162744) < 1e-12);
}

TEST_CASE("test-function degeneracies") {
  CHECK(test_fn_f(1.0, 0.0).is_constant());
  CHECK(std::abs(test_fn_f(1.0, 0.0)(0.3)) < 1e-15);  // 1 - 1
  CHECK(std::abs(test_fn_h(2.0, 0.0)(0.7) - 1.0) < 1e-15);
  CHECK_THROWS_AS(test_fn_g(0.0), DegenerateError);
  CHECK_THROWS_AS(test_fn_g(1e-5), DegenerateError);
  CHECK_THROWS_AS(test_fn_h(1.0, 0.5), ValidationError);
  CHECK_THROWS_AS(test_fn_f(0.0, 0.5), ValidationError);
  CHECK_THROWS_AS(test_fn_f(1.0, 1.0), ValidationError);
}

TEST_CASE("test-function identity sweep") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ua(0.2, 3.0), uh(1.0 + 1e-9, 3.0), ur(0.1, 0.99), ut(0.0, 2 * M_PI);
  for (int i = 0; i < 50; ++i) {
    const Complex w = std::polar(ur(rng), ut(rng));
    const double d = one_minus_abs2(w);
    const double a = ua(rng);
    const auto f = test_fn_f(a, w);
    CHECK(std::abs(f(w)) <= 1e-9 * std::pow(d, -a));
    CHECK(std::abs(f.derivative()(w) - std::conj(w) * std::pow(d, -a)) <= 1e-6 * std::pow(d, -a));

    const double b = uh(rng);
    const auto h = test_fn_h(b, w);
    CHECK(std::abs(h(w) - std::pow(d, 1.0 - b)) <= 1e-6 * std::pow(d, 1.0 - b));
    CHECK(std::abs(h.derivative()(w)) <= 1e-6 * std::pow(d, -b));

    const double t = -std::log1p(-std::norm(w));
    const auto g = test_fn_g(w);
    CHECK(std::abs(g(w) - t) <= 1e-6 * t);
    CHECK(std::abs(g.derivative()(w)) <= 1e-6 * (1.0 + std::abs(w) / d));
  }
}

TEST_CASE("test functions are uniformly Bloch bounded, stable under refinement") {
  double sup14 = 0.0, sup16 = 0.0;
  const DiscGrid g14(14), g16(16);
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (int n = 1; n <= 10; ++n) {
      const auto f = test_fn_f(alpha, std::polar(1.0 - std::ldexp(1.0, -n), 0.7 * n));
      sup14 = std::max(sup14, bloch_norm(f, alpha, g14));
      sup16 = std::max(sup16, bloch_norm(f, alpha, g16));
    }
  }
  CHECK(std::isfinite(sup14));
  CHECK(std::abs(sup16 - sup14) < 0.05 * sup14);
}

TEST_CASE("test functions vanish locally uniformly as |w| -> 1") {
  const DiscGrid g(5);
  std::vector<double> maxima;
  for (int n = 4; n <= 14; ++n) {
    const auto f = test_fn_f(1.0, 1.0 - std::ldexp(1.0, -n));
    double m = 0.0;
    for (const Complex& p : g.points()) {
      if (std::abs(p) <= 0.5) m = std::max(m, std::abs(f(p)));
    }
    maxima.push_back(m);
  }
  for (std::size_t i = 1; i < maxima.size(); ++i) CHECK(maxima[i] <= maxima[i - 1] + 1e-3);
  CHECK(maxima.back() < 1e-3);
}

TEST_CASE("family spec") {
  CHECK(family_from_string("h") == Family::H);
  CHECK(to_string(Family::G) == "g");
  CHECK_THROWS_AS(family_from_string("q"), ValidationError);
  TestFnSpec spec{Family::G, 1.0, 0.99, false};
  CHECK(std::abs(spec.build()(0.99) + 18.93522831511162744) < 1e-12);
}
