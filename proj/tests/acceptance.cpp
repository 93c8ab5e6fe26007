// Acceptance criteria, one PASS/FAIL line each. Exit status is the number
// of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "wco/bloch.hpp"
#include "wco/catalog.hpp"
#include "wco/duality.hpp"
#include "wco/series.hpp"
#include "wco/vector_space.hpp"

using namespace wco;

namespace {

const AnalyticFn z = AnalyticFn::identity();
const AnalyticFn one = AnalyticFn::constant(1.0);

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt2(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

struct NamedMap {
  const char* name;
  catalog::SelfMap map;
};

std::vector<NamedMap> maps() {
  const Complex zeros[2] = {Complex(0.3, 0.0), Complex(0.0, -0.5)};
  return {{"z", catalog::identity_map()},
          {"dilation(0.5)", catalog::dilation_map(0.5)},
          {"z^2", catalog::monomial_map(2)},
          {"z^3", catalog::monomial_map(3)},
          {"blaschke(0.5)", catalog::blaschke_map(0.5)},
          {"blaschke(0.2+0.6i)", catalog::blaschke_map(Complex(0.2, 0.6))},
          {"blaschke_product", catalog::blaschke_product_map(zeros)},
          {"lens(0.5)", catalog::lens_map(0.5)}};
}

std::vector<catalog::Weight> weights() {
  return {catalog::Weight(one, 0.0), catalog::Weight(z, 0.5),
          catalog::Weight(one + 0.5 * z, 0.0), catalog::Weight(exp(z), 0.0)};
}

// 1 -------------------------------------------------------------------------
Outcome test_function_identities() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ua(0.2, 3.0), uh(1.0 + 1e-6, 3.0), ur(0.1, 0.99),
      ut(0.0, 2.0 * M_PI);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Complex w = std::polar(ur(rng), ut(rng));
    const double d = one_minus_abs2(w);
    const double a = ua(rng);
    const auto f = catalog::test_fn_f(a, w);
    const double scale = std::pow(d, -a);
    worst = std::max(worst, std::abs(f(w)) / scale);
    worst = std::max(worst, std::abs(f.derivative()(w) - std::conj(w) * scale) / scale);

    const double b = uh(rng);
    const auto h = catalog::test_fn_h(b, w);
    worst = std::max(worst, std::abs(h(w) - std::pow(d, 1.0 - b)) / std::pow(d, 1.0 - b));
    worst = std::max(worst, std::abs(h.derivative()(w)) / std::pow(d, -b));

    const double t = -std::log1p(-std::norm(w));
    const auto g = catalog::test_fn_g(w);
    worst = std::max(worst, std::abs(g(w) - t) / t);
    worst = std::max(worst, std::abs(g.derivative()(w)) / (1.0 + std::abs(w) / d));
  }
  return {worst <= 1e-6, fmt("50 (alpha, w) pairs, max relative error %.3g", worst)};
}

// 2 -------------------------------------------------------------------------
Outcome lower_bound() {
  struct Pair {
    AnalyticFn psi, phi;
  };
  const std::vector<Pair> pairs = {{one, z}, {z, pow(z, 2.0)}, {one, catalog::blaschke(0.5)}};
  std::vector<Complex> pts;
  for (int n = 1; n <= 10; ++n) pts.push_back(std::polar(1.0 - std::ldexp(1.0, -n), 0.37 * n));
  const DiscGrid& grid = verification_grid();
  int rows = 0, failed = 0;
  double worst_gap = 0.0;
  for (auto [a, b] : {std::pair{0.5, 0.5}, {1.0, 1.0}, {2.0, 2.0}, {0.5, 1.5}}) {
    for (const auto& p : pairs) {
      for (const auto& r : lower_bound_check(p.psi, p.phi, a, b, pts, grid)) {
        ++rows;
        if (!r.pass()) ++failed;
        if (r.rhs > 0.0) worst_gap = std::max(worst_gap, std::abs(r.intermediate - r.rhs) / r.rhs);
      }
    }
  }
  return {failed == 0, fmt2("%.0f rows, %.0f failed", rows, failed) +
                           fmt(", intermediate equality max rel dev %.3g", worst_gap)};
}

// 3 -------------------------------------------------------------------------
Outcome classifier_ground_truths() {
  const DiscGrid& grid = verification_grid();
  struct Case {
    AnalyticFn phi;
    double a, b;
    bool bounded, compact;
  };
  std::vector<Case> cases;
  for (double a : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) cases.push_back({z, a, a, true, false});
  for (double r : {0.0, 0.3, 0.5, 0.9}) {
    for (double a : {0.5, 1.0, 2.0}) {
      for (double b : {0.5, 1.0, 2.0}) cases.push_back({catalog::dilation(r), a, b, true, true});
    }
  }
  cases.push_back({z, 1.0, 2.0, true, true});
  cases.push_back({z, 1.0, 0.5, false, false});
  int wrong = 0, inconclusive = 0;
  for (const auto& c : cases) {
    const auto cls = classify(one, c.phi, c.a, c.b, grid);
    if (!cls.determinate()) ++inconclusive;
    if (cls.bounded != c.bounded || cls.compact != c.compact) ++wrong;
  }
  return {wrong == 0 && inconclusive == 0,
          std::to_string(cases.size()) + " cases, " + std::to_string(wrong) + " wrong, " +
              std::to_string(inconclusive) + " inconclusive"};
}

// 4 -------------------------------------------------------------------------
Outcome pairing_exactness() {
  double worst = 0.0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (int j = 0; j <= 20; ++j) {
      const auto f = Polynomial::monomial(j).to_fn();
      for (int k = 0; k <= 20; ++k) {
        const Complex v = pair_poly(f, Polynomial::monomial(k), alpha, std::max(j, k)).value;
        const double want = j == k ? std::exp(std::lgamma(j + 1.0) + std::lgamma(alpha) -
                                              std::lgamma(j + 1.0 + alpha)) / 2.0
                                   : 0.0;
        worst = std::max(worst, std::abs(v - want));
      }
    }
  }
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  double worst_quad = 0.0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (int df = 0; df <= 5; ++df) {
      Polynomial fp, p;
      for (int j = 0; j <= df; ++j) fp.coeffs.emplace_back(g(rng), g(rng));
      for (int j = 0; j <= 5; ++j) p.coeffs.emplace_back(g(rng), g(rng));
      const Complex sum = pair_poly(fp.to_fn(), p, alpha, 5, 0.999).value;
      const Complex quad = oracle::pairing_quadrature([&](Complex w) { return fp(w); },
                                                      [&](Complex w) { return p(w); }, alpha, 0.999);
      worst_quad = std::max(worst_quad, std::abs(sum - quad) / std::max(1.0, std::abs(quad)));
    }
  }
  return {worst <= 1e-12 && worst_quad <= 1e-8,
          fmt2("monomial max err %.3g, quadrature max rel err %.3g", worst, worst_quad)};
}

// 5 -------------------------------------------------------------------------
Outcome weak_null() {
  const std::vector<Polynomial> probes = {Polynomial::monomial(0), Polynomial::monomial(1),
                                          Polynomial::monomial(2), Polynomial::monomial(3)};
  const auto r = weak_null_certificate(0.5, 4, 10, probes, 1e-2, 5);
  bool decreasing = true;
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    decreasing = decreasing && r.rows[i].max_abs_pairing < r.rows[i - 1].max_abs_pairing &&
                 r.rows[i].max_coeff < r.rows[i - 1].max_coeff;
  }
  const double last = r.rows.back().max_abs_pairing;
  return {decreasing && last < 1e-2 && r.certified == Verdict::True,
          fmt2("n = 4..10, final max pairing %.3g, final max coefficient %.3g", last,
               r.rows.back().max_coeff)};
}

// 6 -------------------------------------------------------------------------
Outcome factorizations() {
  std::mt19937_64 rng(6);
  std::vector<Complex> sample(200);
  for (auto& p : sample) p = oracle::random_in_disc(rng, 0.995);
  const auto f = exp(z) * catalog::test_fn_f(1.0, Complex(0.3, 0.3)) + pow(z, 5.0);
  double worst = 0.0;
  int checks = 0;
  bool ok = true;
  for (std::size_t d : {1u, 2u, 5u}) {
    for (const auto& w : weights()) {
      for (const auto& m : maps()) {
        const auto x = oracle::random_unit(rng, d);
        for (const auto& c : check_prop1_factorizations(w, m.map, f, x, Functional(x), sample)) {
          ok = ok && c.pass;
          worst = std::max(worst, c.max_abs_deviation);
          ++checks;
        }
      }
    }
  }
  return {ok, std::to_string(checks) + " identity checks, max abs deviation " + fmt("%.3g", worst)};
}

// 7 -------------------------------------------------------------------------
Outcome functional_commutation() {
  std::mt19937_64 rng(7);
  const auto ms = maps();
  const auto ws = weights();
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 1 + rng() % 6;
    std::vector<AnalyticFn> comps;
    for (std::size_t i = 0; i < d; ++i) {
      comps.push_back(Complex(g(rng), g(rng)) * catalog::blaschke(oracle::random_in_disc(rng, 0.9)) +
                      Complex(g(rng), g(rng)) * exp(Complex(g(rng), g(rng)) * z));
    }
    const VecFn F(comps);
    const Functional xs(oracle::random_unit(rng, d));
    const auto& psi = ws[rng() % ws.size()].fn();
    const auto& phi = ms[rng() % ms.size()].map.fn();
    const Complex p = oracle::random_in_disc(rng, 0.995);
    const Complex lhs = xs.apply(apply_wco_vec(psi, phi, F)(p));
    const Complex rhs = apply_wco(psi, phi, xs.compose(F))(p);
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
  }
  return {worst <= 1e-12, fmt("100 samples, max scaled deviation %.3g", worst)};
}

// 8 -------------------------------------------------------------------------
Outcome sandwich() {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  const DiscGrid& grid = verification_grid();
  double left = -1e300, right = -1e300;
  for (int t = 0; t < 20; ++t) {
    const std::size_t d = t % 2 ? 5 : 2;
    const double alpha = 0.5 + 0.25 * (t % 6);
    std::vector<AnalyticFn> comps;
    for (std::size_t i = 0; i < d; ++i) {
      AnalyticFn c = AnalyticFn::constant(Complex(g(rng), g(rng)));
      for (int k = 1; k <= 3; ++k) c = c + Complex(g(rng), g(rng)) * pow(z, static_cast<double>(k));
      c = c + Complex(g(rng), g(rng)) * catalog::test_fn_f(alpha, oracle::random_in_disc(rng, 0.9));
      comps.push_back(c);
    }
    const VecFn F(comps);
    const double w = weak_norm(F, alpha, grid, 4 * static_cast<int>(d), 100 + t);
    const double v = vec_bloch_norm(F, alpha, grid);
    left = std::max(left, w - v);
    right = std::max(right, v - 2.0 * w - 1e-9);
  }
  return {left <= 0.0 && right <= 0.0,
          fmt2("20 VecFn, max(weak - vec) %.3g, max(vec - 2 weak - 1e-9) %.3g", left, right)};
}

// 9 -------------------------------------------------------------------------
Outcome numerics_hygiene() {
  const Complex zeros[2] = {Complex(0.3, 0.0), Complex(0.0, -0.5)};
  const std::vector<AnalyticFn> fns = {
      catalog::blaschke(0.5),        catalog::blaschke(Complex(-0.2, 0.7)),
      catalog::blaschke_product(zeros), catalog::dilation(0.5),
      catalog::monomial(2),          catalog::monomial(5),
      catalog::lens(0.5),            catalog::lens(0.2),
      catalog::test_fn_f(0.5, 0.9),  catalog::test_fn_f(2.0, Complex(0.3, -0.6)),
      catalog::test_fn_h(2.0, 0.9),  catalog::test_fn_h(1.5, Complex(0.0, 0.7)),
      catalog::test_fn_g(0.9),       catalog::test_fn_g(Complex(0.5, 0.5), false)};
  std::mt19937_64 rng(9);
  double worst_fd = 0.0;
  for (const auto& f : fns) {
    for (int i = 0; i < 100; ++i) {
      const Complex p = oracle::random_in_disc(rng, 0.9);
      const Complex sym = f.derivative()(p);
      const Complex fd = oracle::derivative([&](Complex w) { return f(w); }, p, 1e-3);
      worst_fd = std::max(worst_fd, std::abs(sym - fd) / std::max(1.0, std::abs(sym)));
    }
  }

  bool monotone = true;
  for (const auto& f : fns) {
    double prev = 0.0;
    for (int K = 4; K <= 16; ++K) {
      const double v = bloch_norm(f, 1.0, DiscGrid(K));
      monotone = monotone && v >= prev;
      prev = v;
    }
  }

  bool invariant = true;
  const DiscGrid& grid = verification_grid();
  for (const auto& m : maps()) {
    for (const auto& psi : {one, z, one + 0.5 * z}) {
      for (auto [a, b] : {std::pair{0.5, 0.5}, {1.0, 1.0}, {2.0, 1.0}, {1.0, 2.0}}) {
        const auto base = classify(psi, m.map.fn(), a, b, grid);
        for (Complex s : {Complex(2.0), Complex(0.0, 1.0)}) {
          const auto c = classify(s * psi, m.map.fn(), a, b, grid);
          invariant = invariant && c.bounded_verdict == base.bounded_verdict &&
                      c.compact_verdict == base.compact_verdict;
        }
      }
    }
  }
  return {worst_fd <= 1e-6 && monotone && invariant,
          fmt("derivative max rel err %.3g", worst_fd) + ", refinement " +
              (monotone ? "monotone" : "NOT monotone") + ", scaling " +
              (invariant ? "invariant" : "NOT invariant")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"test-function identities", test_function_identities},
      {"lower bound and intermediate equality", lower_bound},
      {"classifier ground truths", classifier_ground_truths},
      {"pairing exactness and quadrature", pairing_exactness},
      {"weak-null certificate", weak_null},
      {"factorization identities", factorizations},
      {"functional commutation", functional_commutation},
      {"norm sandwich", sandwich},
      {"numerics hygiene", numerics_hygiene},
  };
  int failed = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("[%s] %zu. %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), secs);
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%zu/%zu criteria passed in %.2fs\n", criteria.size() - failed, criteria.size(), total);
  return failed;
}
