#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>

#include "support/oracles.hpp"
#include "wco/catalog.hpp"
#include "wco/errors.hpp"
#include "wco/expr.hpp"

using namespace wco;

namespace {

const AnalyticFn z = AnalyticFn::identity();
AnalyticFn c(Complex v) { return AnalyticFn::constant(v); }

// Random analytic tree on the disc: operands stay away from branch cuts and
// zero denominators by construction.
AnalyticFn random_tree(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  switch (pick(rng)) {
    case 0:
      return z;
    case 1:
      return c(Complex(u(rng), u(rng)));
    case 2:
      return random_tree(rng, depth - 1) + random_tree(rng, depth - 1);
    case 3:
      return random_tree(rng, depth - 1) * random_tree(rng, depth - 1);
    case 4:
      return random_tree(rng, depth - 1) / (c(2.0) - 0.5 * z);
    case 5:
      return exp(0.3 * random_tree(rng, depth - 1));
    case 6:
      return pow(c(1.0) - Complex(0.4 * u(rng), 0.4 * u(rng)) * z, 1.5 * u(rng));
    default:
      return log(c(1.0) - Complex(0.5 * u(rng), 0.3 * u(rng)) * z);
  }
}

}  // namespace

TEST_CASE("evaluation examples") {
  CHECK(std::abs(pow(z, 2.0)(0.5) - 0.25) < 1e-15);
  CHECK(std::abs(pow(c(1.0) - 0.5 * z, -1.0)(0.0) - 1.0) < 1e-15);
  const auto L = log(c(1.0) / (c(1.0) - 0.9 * z));
  CHECK(std::abs(L(0.9) - 1.660731206821650908) < 1e-14);
}

TEST_CASE("derivative examples") {
  CHECK(std::abs(pow(z, 2.0).derivative()(0.5) - 1.0) < 1e-15);
  const auto f = pow(c(1.0) - 0.9 * z, -0.5);
  CHECK(std::abs(f.derivative()(0.0) - 0.45) < 1e-15);
  const auto k = c(Complex(2.0, -1.0));
  CHECK(k.derivative().is_constant());
  CHECK(k.derivative()(0.3) == Complex(0.0));
}

TEST_CASE("constant folding keeps trees small") {
  CHECK(expr::node_count((c(0.0) + z).node()) == 1);
  CHECK(expr::node_count((c(1.0) * z).node()) == 1);
  CHECK((c(2.0) * c(3.0)).is_constant());
  CHECK((c(2.0) * c(3.0))(0.1) == Complex(6.0));
  CHECK(expr::is_zero(c(0.0).derivative().node()));
}

TEST_CASE("domain and branch errors") {
  CHECK_THROWS_AS(z(1.0), DomainError);
  CHECK_THROWS_AS(z(Complex(0.8, 0.7)), DomainError);
  CHECK_THROWS_AS(log(z)(-0.5), BranchError);
  CHECK_THROWS_AS(log(z)(0.0), BranchError);
  CHECK_THROWS_AS(pow(z, 0.5)(-0.25), BranchError);
  CHECK_THROWS_AS((c(1.0) / z)(0.0), DomainError);
  // Integral powers have no cut.
  CHECK(std::abs(pow(z, 2.0)(-0.5) - 0.25) < 1e-15);
  CHECK(std::abs(pow(z, -3.0)(-0.5) + 8.0) < 1e-13);
}

TEST_CASE("composition") {
  const auto inner = catalog::blaschke(0.5);
  const auto outer = exp(z) + pow(z, 3.0);
  const auto h = compose(outer, inner);
  for (double x : {-0.7, 0.0, 0.4}) {
    const Complex w = inner(x);
    CHECK(std::abs(h(x) - (std::exp(w) + w * w * w)) < 1e-14);
    const Complex chain = (std::exp(w) + 3.0 * w * w) * inner.derivative()(x);
    CHECK(std::abs(h.derivative()(x) - chain) < 1e-13);
  }
}

TEST_CASE("batch evaluation matches pointwise") {
  std::mt19937_64 rng(7);
  std::vector<Complex> pts(300);
  for (auto& p : pts) p = oracle::random_in_disc(rng, 0.95);
  for (int t = 0; t < 30; ++t) {
    const auto f = random_tree(rng, 4);
    const auto batch = f.eval_batch(pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Complex want = f(pts[i]);
      CHECK(std::abs(batch[i] - want) <= 1e-14 * (1.0 + std::abs(want)));
    }
  }
}

TEST_CASE("random trees: symbolic derivative matches finite differences") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const auto f = random_tree(rng, 4);
    const Complex x = oracle::random_in_disc(rng, 0.9);
    const Complex sym = f.derivative()(x);
    const Complex fd = oracle::derivative([&](Complex w) { return f(w); }, x, 1e-3);
    CHECK(std::abs(sym - fd) <= 1e-6 * (1.0 + std::abs(sym)));
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("catalog functions: derivative vs central difference, 1000 points") {
  const Complex zeros[2] = {Complex(0.3, 0.0), Complex(0.0, -0.5)};
  const std::vector<AnalyticFn> fns = {
      catalog::blaschke(Complex(0.3, 0.4)), catalog::blaschke_product(zeros),
      catalog::dilation(0.5),               catalog::monomial(4),
      catalog::lens(0.5),                   catalog::test_fn_f(0.5, 0.7),
      catalog::test_fn_h(2.0, Complex(0.0, 0.6)), catalog::test_fn_g(0.7)};
  std::mt19937_64 rng(3);
  const double h = 1e-5;
  for (const auto& f : fns) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Complex x = oracle::random_in_disc(rng, 0.95 - 2 * h);
      const Complex fd = (f(x + h) - f(x - h)) / (2.0 * h);
      const Complex sym = f.derivative()(x);
      worst = std::max(worst, std::abs(sym - fd) / (1.0 + std::abs(sym)));
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("derivative cache is shared and thread safe") {
  const auto f = exp(pow(z, 2.0)) / (c(3.0) - z);
  std::vector<const AnalyticFn*> seen(4, nullptr);
  std::vector<std::thread> threads;
  for (int i = 0; i < 4; ++i) {
    threads.emplace_back([&, i] { seen[i] = &f.derivative(); });
  }
  for (auto& t : threads) t.join();
  for (auto* p : seen) CHECK(p == seen[0]);
  const AnalyticFn copy = f;
  CHECK(&copy.derivative() == &f.derivative());
}
