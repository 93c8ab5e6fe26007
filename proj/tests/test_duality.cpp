#include <doctest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "wco/catalog.hpp"
#include "wco/duality.hpp"
#include "wco/errors.hpp"
#include "wco/series.hpp"

using namespace wco;

namespace {

Polynomial random_poly(std::mt19937_64& rng, int degree) {
  std::normal_distribution<double> g;
  Polynomial p;
  for (int j = 0; j <= degree; ++j) p.coeffs.emplace_back(g(rng), g(rng));
  return p;
}

}  // namespace

TEST_CASE("beta integral") {
  CHECK(beta_integral(1, 1.0) == doctest::Approx(0.25).epsilon(1e-14));
  for (int j = 0; j < 40; ++j) CHECK(beta_integral(j, 1.0) == doctest::Approx(1.0 / (2 * j + 2)).epsilon(1e-13));
  CHECK(beta_integral(0, 2.0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS(beta_integral(-1, 1.0), ValidationError);
  CHECK_THROWS_AS(beta_integral(1, 0.0), ValidationError);
}

TEST_CASE("pairing examples and monomial diagonality") {
  const auto z = AnalyticFn::identity();
  CHECK(std::abs(pair_poly(z, Polynomial{{0.0, 1.0}}, 1.0, 1).value - 0.25) < 1e-15);
  CHECK(std::abs(pair_poly(AnalyticFn::constant(1.0), Polynomial{{1.0}}, 2.0, 0).value - 0.25) < 1e-15);
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (int j = 0; j <= 20; ++j) {
      const auto f = Polynomial::monomial(j).to_fn();
      for (int k = 0; k <= 20; ++k) {
        const auto v = pair_poly(f, Polynomial::monomial(k), alpha, std::max(j, k)).value;
        if (j == k) {
          CHECK(std::abs(v - beta_integral(j, alpha)) <= 1e-12);
        } else {
          CHECK(std::abs(v) <= 1e-12);
        }
      }
    }
  }
  CHECK_THROWS_AS(pair_poly(z, Polynomial{{0.0, 0.0, 1.0}}, 1.0, 1), ValidationError);
}

TEST_CASE("pairing is sesquilinear") {
  std::mt19937_64 rng(4);
  const auto f = catalog::test_fn_f(0.7, Complex(0.4, 0.3));
  for (int t = 0; t < 20; ++t) {
    const auto p = random_poly(rng, 6);
    const Complex c(0.7 - 0.1 * t, 0.2 * t - 1.0);
    const Complex base = pair_poly(f, p, 0.7, 6).value;
    const Complex left = pair_poly(c * f, p, 0.7, 6).value;
    Polynomial cp = p;
    for (auto& a : cp.coeffs) a *= c;
    const Complex right = pair_poly(f, cp, 0.7, 6).value;
    CHECK(std::abs(left - c * base) <= 1e-12 * std::abs(c * base));
    CHECK(std::abs(right - std::conj(c) * base) <= 1e-12 * std::abs(c * base));
  }
}

TEST_CASE("pairing agrees with two-dimensional quadrature at r = 0.999") {
  std::mt19937_64 rng(8);
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (int t = 0; t < 6; ++t) {
      const auto fp = random_poly(rng, t % 6);
      const auto p = random_poly(rng, 5 - t % 6);
      const auto f = fp.to_fn();
      const int n = std::max(fp.degree(), p.degree());
      const Complex sum = pair_poly(f, p, alpha, n, 0.999).value;
      const Complex quad = oracle::pairing_quadrature([&](Complex w) { return fp(w); },
                                                      [&](Complex w) { return p(w); }, alpha, 0.999);
      CHECK(std::abs(sum - quad) <= 1e-8 * std::max(1.0, std::abs(quad)));
    }
  }
}

TEST_CASE("single constant probe picks out f(0)") {
  const auto f = catalog::test_fn_f(0.5, 0.8);
  const auto v = pair_poly(f, Polynomial{{1.0}}, 0.5, 0).value;
  CHECK(std::abs(v - f(0.0) * beta_integral(0, 0.5)) < 1e-14);
  CHECK(pair_poly(AnalyticFn::constant(0.0), Polynomial{{1.0, 2.0, 3.0}}, 0.5, 2).value == Complex(0.0));
}

TEST_CASE("weak-null certificate") {
  const std::vector<Polynomial> probes = {Polynomial::monomial(0), Polynomial::monomial(1),
                                          Polynomial::monomial(2)};
  const auto r = weak_null_certificate(0.5, 4, 10, probes, 1e-2);
  REQUIRE(r.rows.size() == 7);
  CHECK(r.rows.back().max_abs_pairing < 1e-2);
  CHECK(r.certified == Verdict::True);
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    CHECK(r.rows[i].max_abs_pairing < r.rows[i - 1].max_abs_pairing);
    CHECK(r.rows[i].w == 1.0 - std::ldexp(1.0, -static_cast<int>(i) - 4));
  }
  const auto loose = weak_null_certificate(0.5, 4, 6, probes, 1e-4);
  CHECK(loose.certified == Verdict::False);
  CHECK_THROWS_AS(weak_null_certificate(0.5, 4, 6, {}, 1e-2), ValidationError);
}

TEST_CASE("F-family coefficients eventually decrease") {
  for (int j = 0; j <= 5; ++j) {
    std::vector<double> c;
    for (int n = 1; n <= 12; ++n) {
      const auto s = taylor(catalog::test_fn_f(0.5, 1.0 - std::ldexp(1.0, -n)), 5);
      c.push_back(std::abs(s.coeffs[j]));
    }
    for (std::size_t n = 6; n < c.size(); ++n) CHECK(c[n] < c[n - 1]);
  }
}
