#include "wco/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "wco/catalog.hpp"
#include "wco/errors.hpp"
#include "wco/parser.hpp"
#include "wco/series.hpp"

namespace wco::verify {

namespace {

using report::Json;

class Recorder {
 public:
  explicit Recorder(SuiteResult& r) : r_(r) { r_.details["checks"] = Json::array(); }

  void check(const std::string& name, bool ok, Json detail = Json::object()) {
    Json entry{{"check", name}, {"pass", ok}};
    for (auto it = detail.begin(); it != detail.end(); ++it) entry[it.key()] = it.value();
    r_.details["checks"].push_back(std::move(entry));
    if (!ok) {
      r_.pass = false;
      r_.failures.push_back(name);
    }
  }

  Json& details() { return r_.details; }

 private:
  SuiteResult& r_;
};

double rel_err(Complex got, Complex want, double scale) {
  return std::abs(got - want) / std::max({std::abs(want), scale, 1e-300});
}

Complex random_in_disc(std::mt19937_64& rng, double r_max) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(r_max * std::sqrt(u(rng)), 2.0 * M_PI * u(rng));
}

std::vector<Complex> random_unit_vector(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(d);
  for (auto& c : v) c = Complex(g(rng), g(rng));
  const double n = euclidean_norm(v);
  for (auto& c : v) c /= n;
  return v;
}

std::vector<double> alphas(const Options& o, std::vector<double> fallback) {
  if (o.alpha) return {*o.alpha};
  return fallback;
}

std::vector<int> dims(const Options& o) {
  if (o.d) {
    if (*o.d < 1) throw ValidationError("d must be >= 1");
    return {*o.d};
  }
  return {1, 2, 5};
}

struct NamedFn {
  std::string name;
  AnalyticFn fn;
};

std::vector<NamedFn> catalog_functions() {
  const Complex zeros[2] = {Complex(0.3, 0.0), Complex(0.0, -0.5)};
  return {
      {"blaschke(0.5)", catalog::blaschke(0.5)},
      {"blaschke(0.3+0.4i)", catalog::blaschke(Complex(0.3, 0.4))},
      {"blaschke_product(0.3,-0.5i)", catalog::blaschke_product(zeros)},
      {"dilation(0.5)", catalog::dilation(0.5)},
      {"monomial(3)", catalog::monomial(3)},
      {"lens(0.5)", catalog::lens(0.5)},
      {"testfn_f(0.5,0.7)", catalog::test_fn_f(0.5, 0.7)},
      {"testfn_f(2,0.5i)", catalog::test_fn_f(2.0, Complex(0.0, 0.5))},
      {"testfn_h(2,0.7)", catalog::test_fn_h(2.0, 0.7)},
      {"testfn_g(0.7)", catalog::test_fn_g(0.7)},
      {"testfn_g(0.7,as-printed)", catalog::test_fn_g(0.7, false)},
  };
}

struct NamedMap {
  std::string name;
  catalog::SelfMap map;
};

std::vector<NamedMap> catalog_maps() {
  const Complex zeros[2] = {Complex(0.3, 0.0), Complex(0.0, -0.5)};
  return {
      {"z", catalog::identity_map()},
      {"dilation(0.5)", catalog::dilation_map(0.5)},
      {"z^2", catalog::monomial_map(2)},
      {"blaschke(0.5)", catalog::blaschke_map(0.5)},
      {"blaschke_product(0.3,-0.5i)", catalog::blaschke_product_map(zeros)},
      {"lens(0.5)", catalog::lens_map(0.5)},
  };
}

struct NamedWeight {
  std::string name;
  catalog::Weight weight;
};

std::vector<NamedWeight> catalog_weights() {
  return {
      {"1", catalog::Weight(AnalyticFn::constant(1.0), 0.0)},
      {"z", catalog::Weight(AnalyticFn::identity(), 0.5)},
      {"exp(z)", catalog::Weight(exp(AnalyticFn::identity()), 0.0)},
  };
}

// ---------------------------------------------------------------------------

void suite_testfn(Recorder& rec, const Options& o) {
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> ua(0.2, 3.0);
  double worst_f = 0.0, worst_df = 0.0, worst_h = 0.0, worst_dh = 0.0, worst_g = 0.0,
         worst_dg = 0.0;
  const int pairs = 50;
  for (int i = 0; i < pairs; ++i) {
    const double alpha = o.alpha ? *o.alpha : ua(rng);
    Complex w = random_in_disc(rng, 0.99);
    if (std::abs(w) < 0.1) w = std::polar(0.1, std::arg(w));
    const double d = one_minus_abs2(w);

    const auto f = catalog::test_fn_f(alpha, w);
    worst_f = std::max(worst_f, std::abs(f(w)) * std::pow(d, alpha));
    worst_df = std::max(worst_df, rel_err(f.derivative()(w), std::conj(w) * std::pow(d, -alpha), 0));

    const double ah = alpha + 1.0;
    const auto h = catalog::test_fn_h(ah, w);
    worst_h = std::max(worst_h, rel_err(h(w), std::pow(d, 1.0 - ah), 0));
    const double dh_scale = ah * (ah + 1.0) * std::abs(w) * std::pow(d, -ah);
    worst_dh = std::max(worst_dh, std::abs(h.derivative()(w)) / dh_scale);

    const auto g = catalog::test_fn_g(w);
    const double t = -std::log1p(-std::norm(w));
    worst_g = std::max(worst_g, rel_err(g(w), t, 0));
    const double dg_scale = 1.0 + std::abs(w) / d;
    worst_dg = std::max(worst_dg, std::abs(g.derivative()(w)) / dg_scale);
  }
  const double tol = 1e-6;
  rec.check("f(w) = 0", worst_f <= 1e-9, {{"pairs", pairs}, {"max_rel_err", worst_f}});
  rec.check("f'(w) = conj(w)(1-|w|^2)^-alpha", worst_df <= tol, {{"max_rel_err", worst_df}});
  rec.check("h(w) = (1-|w|^2)^(1-alpha)", worst_h <= tol, {{"max_rel_err", worst_h}});
  rec.check("h'(w) = 0", worst_dh <= tol, {{"max_rel_err", worst_dh}});
  rec.check("g(w) = log(1/(1-|w|^2))", worst_g <= tol, {{"max_rel_err", worst_g}});
  rec.check("g'(w) = 0", worst_dg <= tol, {{"max_rel_err", worst_dg}});
}

void suite_lowerbound(Recorder& rec, const Options& o) {
  const DiscGrid grid(o.K);
  struct Pair {
    std::string name;
    AnalyticFn psi, phi;
  };
  const std::vector<Pair> pairs = {
      {"(1, z)", AnalyticFn::constant(1.0), AnalyticFn::identity()},
      {"(z, z^2)", AnalyticFn::identity(), catalog::monomial(2)},
      {"(1, blaschke(0.5))", AnalyticFn::constant(1.0), catalog::blaschke(0.5)},
  };
  std::vector<Complex> zs;
  for (int n = 1; n <= 10; ++n) zs.push_back(std::polar(1.0 - std::ldexp(1.0, -n), 0.3 + 0.1 * n));

  for (double alpha : alphas(o, {0.5, 1.0, 2.0})) {
    for (const auto& p : pairs) {
      const auto rows = lower_bound_check(p.psi, p.phi, alpha, alpha, zs, grid);
      bool ok = true;
      Json table = Json::array();
      for (const auto& r : rows) {
        ok = ok && r.pass();
        table.push_back(report::to_json(r));
      }
      rec.check("lower bound " + p.name + " alpha=beta=" + report::dump(Json(alpha), 0), ok,
                {{"rows", std::move(table)}});
    }
  }
}

void suite_classify(Recorder& rec, const Options& o) {
  const DiscGrid grid(o.K);
  const auto one = AnalyticFn::constant(1.0);
  const auto id = AnalyticFn::identity();
  struct Case {
    std::string name;
    AnalyticFn psi, phi;
    double alpha, beta;
    bool bounded, compact;
  };
  std::vector<Case> cases;
  for (double a : {0.5, 1.0, 2.0}) cases.push_back({"(1, z) alpha=beta", one, id, a, a, true, false});
  for (double r : {0.5, 0.9}) {
    for (auto [a, b] : {std::pair{0.5, 0.5}, {1.0, 1.0}, {2.0, 0.5}, {0.5, 2.0}}) {
      cases.push_back({"(1, dilation(" + report::dump(Json(r), 0) + "))", one, catalog::dilation(r),
                       a, b, true, true});
    }
  }
  cases.push_back({"(1, z) alpha=1 beta=2", one, id, 1.0, 2.0, true, true});
  cases.push_back({"(1, z) alpha=1 beta=0.5", one, id, 1.0, 0.5, false, false});

  for (const auto& c : cases) {
    const auto base = classify(c.psi, c.phi, c.alpha, c.beta, grid);
    const bool ok = base.determinate() && base.bounded == c.bounded && base.compact == c.compact;
    Json detail{{"alpha", c.alpha},
                {"beta", c.beta},
                {"bounded", to_string(base.bounded_verdict)},
                {"compact", to_string(base.compact_verdict)}};
    rec.check("classify " + c.name + " alpha=" + report::dump(Json(c.alpha), 0) +
                  " beta=" + report::dump(Json(c.beta), 0),
              ok, detail);

    bool invariant = true;
    for (Complex s : {Complex(2.0, 0.0), Complex(0.0, 1.0)}) {
      const auto scaled = classify(s * c.psi, c.phi, c.alpha, c.beta, grid);
      invariant = invariant && scaled.bounded_verdict == base.bounded_verdict &&
                  scaled.compact_verdict == base.compact_verdict;
    }
    rec.check("verdict invariant under psi -> 2 psi, i psi: " + c.name, invariant);
  }
}

void suite_pairing(Recorder& rec, const Options& o) {
  double worst = 0.0;
  for (double alpha : alphas(o, {0.5, 1.0, 2.0})) {
    for (int j = 0; j <= 20; ++j) {
      const auto f = Polynomial::monomial(j).to_fn();
      for (int k = 0; k <= 20; ++k) {
        const auto got = pair_poly(f, Polynomial::monomial(k), alpha, std::max(j, k)).value;
        const double want = j == k ? beta_integral(j, alpha) : 0.0;
        worst = std::max(worst, std::abs(got - want));
      }
    }
  }
  rec.check("<z^j, z^k> = delta_jk B(j+1, alpha)/2, j,k <= 20", worst <= 1e-12,
            {{"max_abs_err", worst}});

  const auto lin = pair_poly(AnalyticFn::identity(), Polynomial{{0.0, 1.0}}, 1.0, 1).value;
  rec.check("<z, z>_1 = 0.25", std::abs(lin - 0.25) <= 1e-12, {{"value", report::to_json(lin)}});
  const auto c2 = pair_poly(AnalyticFn::constant(1.0), Polynomial{{1.0}}, 2.0, 0).value;
  rec.check("<1, 1>_2 = 0.25", std::abs(c2 - 0.25) <= 1e-12, {{"value", report::to_json(c2)}});
}

void suite_weaknull(Recorder& rec, const Options& o) {
  const std::vector<Polynomial> probes = {Polynomial::monomial(0), Polynomial::monomial(1),
                                          Polynomial::monomial(2), Polynomial::monomial(3)};
  for (double alpha : alphas(o, {0.5})) {
    const auto r = weak_null_certificate(alpha, 4, 10, probes, 1e-2);
    bool pair_decreasing = true;
    bool coeff_decreasing = true;
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
      pair_decreasing = pair_decreasing && r.rows[i].max_abs_pairing < r.rows[i - 1].max_abs_pairing;
      coeff_decreasing = coeff_decreasing && r.rows[i].max_coeff < r.rows[i - 1].max_coeff;
    }
    const std::string tag = " alpha=" + report::dump(Json(alpha), 0);
    rec.check("pairings decrease" + tag, pair_decreasing);
    rec.check("pairing below tol by n=10" + tag, r.certified == Verdict::True,
              {{"final", r.rows.back().max_abs_pairing}});
    rec.check("Taylor coefficients decrease" + tag, coeff_decreasing,
              {{"final", r.rows.back().max_coeff}});
    rec.details()["tables"].push_back(report::to_json(r));

    // Per coefficient: |f̂_{w_n}(j)| decreasing from some n on, n <= 12.
    bool eventually = true;
    for (int j = 0; j <= 5; ++j) {
      std::vector<double> c;
      for (int n = 1; n <= 12; ++n) {
        c.push_back(std::abs(taylor(catalog::test_fn_f(alpha, 1.0 - std::ldexp(1.0, -n)), 5).coeffs[j]));
      }
      eventually = eventually && c[10] < c[9] && c[11] < c[10];
    }
    rec.check("each coefficient eventually decreasing" + tag, eventually);
  }
}

void suite_prop1(Recorder& rec, const Options& o) {
  std::mt19937_64 rng(o.seed);
  std::vector<Complex> sample(200);
  for (auto& z : sample) z = random_in_disc(rng, 0.99);
  const auto f = exp(AnalyticFn::identity()) + pow(AnalyticFn::identity(), 3.0) /
                                                   (AnalyticFn::constant(2.0) - AnalyticFn::identity());
  double worst = 0.0;
  for (int d : dims(o)) {
    for (const auto& w : catalog_weights()) {
      for (const auto& m : catalog_maps()) {
        const auto x = random_unit_vector(rng, static_cast<std::size_t>(d));
        const Functional xstar(x);
        const auto checks = check_prop1_factorizations(w.weight, m.map, f, x, xstar, sample);
        for (const auto& c : checks) {
          worst = std::max(worst, c.max_abs_deviation);
          if (!c.pass) {
            rec.check(c.identity + " psi=" + w.name + " phi=" + m.name + " d=" + std::to_string(d),
                      false, report::to_json(c));
          }
        }
      }
    }
  }
  rec.check("both factorizations on all catalog pairs", rec.details()["checks"].empty(),
            {{"max_abs_deviation", worst}, {"samples", sample.size()}});
}

void suite_normtransfer(Recorder& rec, const Options& o) {
  const DiscGrid grid(o.K);
  const auto id = AnalyticFn::identity();
  const auto one = AnalyticFn::constant(1.0);

  std::mt19937_64 rng(o.seed);
  const auto maps = catalog_maps();
  const auto weights = catalog_weights();
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 1 + rng() % 5;
    std::vector<AnalyticFn> comps;
    for (std::size_t i = 0; i < d; ++i) {
      const Complex a = random_in_disc(rng, 1.0);
      const Complex b = random_in_disc(rng, 0.9);
      comps.push_back(a * exp(Complex(static_cast<double>(i)) * id) + catalog::blaschke(b));
    }
    const VecFn F(std::move(comps));
    const Functional xstar(random_unit_vector(rng, d));
    const auto& psi = weights[rng() % weights.size()].weight.fn();
    const auto& phi = maps[rng() % maps.size()].map.fn();
    const Complex z = random_in_disc(rng, 0.99);
    const Complex lhs = xstar.apply(apply_wco_vec(psi, phi, F)(z));
    const Complex rhs = apply_wco(psi, phi, xstar.compose(F))(z);
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
  }
  rec.check("x* o (Wvec F) = W (x* o F) pointwise, 100 samples", worst <= 1e-12,
            {{"max_rel_deviation", worst}});

  auto transfer = [&](const std::string& name, const AnalyticFn& psi, const AnalyticFn& phi,
                      const VecFn& F, double a, double b, std::optional<double> ratio_eq,
                      std::optional<double> ratio_max) {
    const auto r = check_norm_transfer(psi, phi, F, a, b, grid, 4 * static_cast<int>(F.dim()), o.seed);
    bool ok = r.identity.pass;
    if (ratio_eq) ok = ok && std::abs(r.ratio - *ratio_eq) <= 1e-12;
    if (ratio_max) ok = ok && r.ratio <= *ratio_max;
    rec.check("norm transfer " + name, ok, report::to_json(r));
  };
  const std::vector<Complex> e = {Complex(0.6, 0.0), Complex(0.0, 0.8)};
  transfer("(1, z)", one, id, VecFn::tensor(id, e), 1.0, 1.0, 1.0, std::nullopt);
  transfer("d = 1", id, catalog::monomial(2), VecFn({catalog::blaschke(0.3)}), 1.0, 1.0,
           std::nullopt, std::nullopt);
  transfer("(1, dilation(0.5)), F = (z, z^2)", one, catalog::dilation(0.5),
           VecFn({id, pow(id, 2.0)}), 1.0, 1.0, std::nullopt, 1.0 + 1e-6);
}

void suite_sandwich(Recorder& rec, const Options& o) {
  const DiscGrid grid(o.K);
  std::mt19937_64 rng(o.seed);
  std::normal_distribution<double> g;
  const auto id = AnalyticFn::identity();
  double worst_left = -1e300, worst_right = -1e300, worst_homog = 0.0;
  const std::vector<int> ds = o.d ? std::vector<int>{*o.d} : std::vector<int>{2, 5};
  int count = 0;
  for (int t = 0; t < 20; ++t) {
    const auto d = static_cast<std::size_t>(ds[static_cast<std::size_t>(t) % ds.size()]);
    const double alpha = o.alpha ? *o.alpha : 0.5 + 0.25 * (t % 7);
    std::vector<AnalyticFn> comps;
    for (std::size_t i = 0; i < d; ++i) {
      AnalyticFn c = AnalyticFn::constant(Complex(g(rng), g(rng)));
      for (int k = 1; k <= 4; ++k) c = c + Complex(g(rng), g(rng)) * pow(id, static_cast<double>(k));
      if (t % 2) c = c + catalog::test_fn_f(alpha, random_in_disc(rng, 0.8));
      comps.push_back(c);
    }
    const VecFn F(std::move(comps));
    const int directions = 4 * static_cast<int>(d);
    const double wn = weak_norm(F, alpha, grid, directions, o.seed + static_cast<unsigned>(t));
    const double vn = vec_bloch_norm(F, alpha, grid);
    worst_left = std::max(worst_left, wn - vn);
    worst_right = std::max(worst_right, vn - (2.0 * wn + 1e-9));

    const Complex c(-1.5, 0.5);
    std::vector<AnalyticFn> scaled;
    for (const auto& comp : F.components()) scaled.push_back(c * comp);
    const double vs = vec_bloch_norm(VecFn(std::move(scaled)), alpha, grid);
    worst_homog = std::max(worst_homog, std::abs(vs - std::abs(c) * vn) / (std::abs(c) * vn));
    ++count;
  }
  rec.check("weak_norm <= vec_bloch_norm", worst_left <= 0.0,
            {{"cases", count}, {"max_excess", worst_left}});
  rec.check("vec_bloch_norm <= 2 weak_norm + 1e-9", worst_right <= 0.0, {{"max_excess", worst_right}});
  rec.check("vec_bloch_norm homogeneous", worst_homog <= 1e-12, {{"max_rel_err", worst_homog}});
}

// Five-point central difference along the real direction.
Complex finite_difference(const AnalyticFn& f, Complex z, double h) {
  return (8.0 * (f(z + h) - f(z - h)) - (f(z + 2.0 * h) - f(z - 2.0 * h))) / (12.0 * h);
}

void suite_derivs(Recorder& rec, const Options& o) {
  std::mt19937_64 rng(o.seed);
  std::vector<Complex> pts(20);
  for (auto& z : pts) z = random_in_disc(rng, 0.8);
  for (const auto& nf : catalog_functions()) {
    double worst = 0.0;
    for (const Complex& z : pts) {
      const Complex sym = nf.fn.derivative()(z);
      const Complex fd = finite_difference(nf.fn, z, 1e-3);
      worst = std::max(worst, std::abs(sym - fd) / std::max(std::abs(sym), 1e-3));
    }
    rec.check("symbolic vs finite-difference derivative: " + nf.name, worst <= 1e-6,
              {{"max_rel_err", worst}});
  }

  const auto id = AnalyticFn::identity();
  const std::vector<NamedFn> norm_fns = {{"z^2", pow(id, 2.0)},
                                         {"blaschke(0.5)", catalog::blaschke(0.5)},
                                         {"testfn_f(1,0.9)", catalog::test_fn_f(1.0, 0.9)}};
  for (const auto& nf : norm_fns) {
    bool monotone = true;
    Json values = Json::array();
    double prev = 0.0;
    for (int K = 6; K <= 16; K += 2) {
      const double v = bloch_norm(nf.fn, 1.0, DiscGrid(K));
      values.push_back(v);
      monotone = monotone && v >= prev;
      prev = v;
    }
    rec.check("Bloch norm non-decreasing in K: " + nf.name, monotone, {{"norms", values}});
  }
}

const std::map<std::string, std::function<void(Recorder&, const Options&)>>& registry() {
  static const std::map<std::string, std::function<void(Recorder&, const Options&)>> r = {
      {"testfn", suite_testfn},         {"lowerbound", suite_lowerbound},
      {"classify", suite_classify},     {"pairing", suite_pairing},
      {"weaknull", suite_weaknull},     {"prop1", suite_prop1},
      {"normtransfer", suite_normtransfer}, {"sandwich", suite_sandwich},
      {"derivs", suite_derivs},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"testfn", "lowerbound", "classify",
                                                 "pairing", "weaknull",   "prop1",
                                                 "normtransfer", "sandwich", "derivs"};
  return names;
}

SuiteResult run_suite(const std::string& name, const Options& opts) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw ValidationError("unknown verify suite '" + name + "'");
  SuiteResult result;
  result.name = name;
  Recorder rec(result);
  it->second(rec, opts);
  return result;
}

}  // namespace wco::verify
