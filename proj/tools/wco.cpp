// wco: command-line front end for the weighted composition operator toolkit.
//
// Exit codes: 0 ok, 1 parse error, 2 validation error, 3 inconclusive
// verdict, 4 failed identities or verify suites.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wco/bloch.hpp"
#include "wco/catalog.hpp"
#include "wco/duality.hpp"
#include "wco/errors.hpp"
#include "wco/parser.hpp"
#include "wco/report.hpp"
#include "wco/verify.hpp"

namespace {

using wco::Complex;
using wco::report::Json;

constexpr const char* kVersion = "1.0.0";

enum Exit { kOk = 0, kParse = 1, kValidation = 2, kInconclusive = 3, kFailed = 4 };

struct Config {
  double alpha = 1.0;
  double beta = 1.0;
  std::string psi = "1";
  std::string phi = "z";
  std::string f = "z";
  std::string poly = "1";
  std::string family = "f";
  std::string w = "0.5";
  std::vector<std::string> suites;
  int K = 14;
  int M = 10;
  int d = 0;  // 0: suite default
  double tol_bounded = 1.2;
  double tol_compact = 1e-2;
  double tol = 0.25;
  std::uint64_t seed = 42;
  bool as_printed = false;
  bool points = false;
  bool alpha_set = false;
  std::string out;
};

struct Outcome {
  Json result;
  int exit = kOk;
};

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw wco::ValidationError(std::string(name) + " must be > 0");
  }
}

std::vector<Complex> parse_list(const std::string& text) {
  std::vector<Complex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(wco::parse_complex(item));
  if (out.empty()) throw wco::ValidationError("empty coefficient list");
  return out;
}

Outcome cmd_classify(const Config& c) {
  require_positive(c.alpha, "alpha");
  require_positive(c.beta, "beta");
  const wco::DiscGrid grid(c.K);
  const auto psi = wco::catalog::Weight::find_witness(wco::parse_expr(c.psi), grid);
  const wco::catalog::SelfMap phi(wco::parse_expr(c.phi), grid);
  wco::ClassifyOptions opts;
  opts.tol_bounded = c.tol_bounded;
  opts.tol_compact = c.tol_compact;
  opts.tail_depth = c.M;
  const auto cls = wco::classify(psi, phi, c.alpha, c.beta, grid, opts);
  return {wco::report::to_json(cls, c.points), cls.determinate() ? kOk : kInconclusive};
}

Outcome cmd_norm(const Config& c) {
  require_positive(c.alpha, "alpha");
  const wco::DiscGrid grid(c.K);
  const auto f = wco::parse_expr(c.f);
  const double refined = wco::bloch_norm(f, c.alpha, grid);
  const double grid_only = wco::bloch_norm(f, c.alpha, grid, {false, {}});
  return {Json{{"value", refined}, {"grid_value", grid_only}, {"alpha", c.alpha}}, kOk};
}

Outcome cmd_pair(const Config& c) {
  require_positive(c.alpha, "alpha");
  const auto f = wco::parse_expr(c.f);
  const wco::Polynomial p{parse_list(c.poly)};
  const auto r = wco::pair_poly(f, p, c.alpha, p.degree());
  return {wco::report::to_json(r), kOk};
}

Outcome cmd_testfn(const Config& c) {
  wco::catalog::TestFnSpec spec;
  spec.family = wco::catalog::family_from_string(c.family);
  spec.alpha = c.alpha;
  spec.w = wco::parse_complex(c.w);
  spec.corrected = !c.as_printed;
  if (spec.family != wco::catalog::Family::G) require_positive(c.alpha, "alpha");
  const auto fn = spec.build();
  const Complex w = spec.w;
  const Complex value = fn(w);
  const Complex deriv = fn.derivative()(w);
  const double d = wco::one_minus_abs2(w);

  // Expected value / derivative at w, and the scale the error is measured against.
  Complex want_value, want_deriv;
  double value_scale = 0.0, deriv_scale = 0.0;
  switch (spec.family) {
    case wco::catalog::Family::F:
      want_value = 0.0;
      want_deriv = std::conj(w) * std::pow(d, -c.alpha);
      value_scale = std::pow(d, -c.alpha);
      deriv_scale = std::abs(want_deriv);
      break;
    case wco::catalog::Family::H:
      want_value = std::pow(d, 1.0 - c.alpha);
      want_deriv = 0.0;
      value_scale = std::abs(want_value);
      deriv_scale = c.alpha * (c.alpha + 1.0) * std::abs(w) * std::pow(d, -c.alpha);
      break;
    case wco::catalog::Family::G:
      want_value = -std::log1p(-std::norm(w));
      want_deriv = 0.0;
      value_scale = std::abs(want_value);
      deriv_scale = 1.0 + std::abs(w) / d;
      break;
  }
  const double value_err = std::abs(value - want_value) / std::max(value_scale, 1e-300);
  const double deriv_err = std::abs(deriv - want_deriv) / std::max(deriv_scale, 1e-300);
  const bool pass = value_err <= 1e-6 && deriv_err <= 1e-6;

  const wco::DiscGrid grid(c.K);
  const double norm_alpha = c.alpha > 0.0 ? c.alpha : 1.0;
  const double norm = wco::bloch_norm(fn, norm_alpha, grid);
  const auto little = wco::is_little_bloch(fn, norm_alpha, grid, c.tol);

  Json result{{"family", wco::catalog::to_string(spec.family)},
              {"corrected", spec.corrected},
              {"w", wco::report::to_json(w)},
              {"value", wco::report::to_json(value)},
              {"derivative", wco::report::to_json(deriv)},
              {"expected_value", wco::report::to_json(want_value)},
              {"expected_derivative", wco::report::to_json(want_deriv)},
              {"value_rel_err", value_err},
              {"derivative_rel_err", deriv_err},
              {"bloch_norm", norm},
              {"little_bloch", wco::to_string(little)},
              {"pass", pass}};
  return {std::move(result), pass ? kOk : kFailed};
}

Outcome cmd_verify(const Config& c) {
  wco::verify::Options opts;
  if (c.alpha_set) {
    require_positive(c.alpha, "alpha");
    opts.alpha = c.alpha;
  }
  if (c.d != 0) opts.d = c.d;
  opts.seed = c.seed;
  opts.K = c.K;
  std::vector<std::string> names = c.suites;
  if (names.empty() || (names.size() == 1 && names[0] == "all")) names = wco::verify::suite_names();

  Json suites = Json::array();
  Json failed = Json::array();
  bool all_pass = true;
  for (const auto& name : names) {
    const auto r = wco::verify::run_suite(name, opts);
    all_pass = all_pass && r.pass;
    for (const auto& f : r.failures) failed.push_back(name + ": " + f);
    Json entry{{"name", r.name}, {"pass", r.pass}, {"failures", r.failures}};
    for (auto it = r.details.begin(); it != r.details.end(); ++it) entry[it.key()] = it.value();
    suites.push_back(std::move(entry));
  }
  return {Json{{"pass", all_pass}, {"failed", std::move(failed)}, {"suites", std::move(suites)}},
          all_pass ? kOk : kFailed};
}

Json config_json(const std::string& command, const Config& c) {
  Json j{{"command", command}};
  if (command == "classify") {
    j.update(Json{{"alpha", c.alpha}, {"beta", c.beta}, {"psi", c.psi}, {"phi", c.phi},
                  {"K", c.K}, {"M", c.M}, {"tol_bounded", c.tol_bounded},
                  {"tol_compact", c.tol_compact}, {"points", c.points}});
  } else if (command == "norm") {
    j.update(Json{{"alpha", c.alpha}, {"f", c.f}, {"K", c.K}});
  } else if (command == "pair") {
    j.update(Json{{"alpha", c.alpha}, {"f", c.f}, {"poly", c.poly}});
  } else if (command == "testfn") {
    j.update(Json{{"family", c.family}, {"alpha", c.alpha}, {"w", c.w},
                  {"as_printed", c.as_printed}, {"K", c.K}, {"tol", c.tol}});
  } else if (command == "verify") {
    j.update(Json{{"suites", c.suites}, {"K", c.K}, {"seed", c.seed}});
    if (c.alpha_set) j["alpha"] = c.alpha;
    if (c.d != 0) j["d"] = c.d;
  }
  return j;
}

int emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << '\n';
    return kOk;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write " << path << '\n';
    return kValidation;
  }
  out << text << '\n';
  return kOk;
}

Json error_json(const std::string& kind, const std::string& message) {
  return Json{{"error", kind}, {"message", message}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted composition operators on Bloch-type spaces"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Config c;

  auto grid_opt = [&](CLI::App* sub) {
    sub->add_option("--K", c.K, "grid depth (shells 1 - 2^-k, k <= K)")->capture_default_str();
  };
  auto out_opt = [&](CLI::App* sub) { sub->add_option("--out", c.out, "write the report here"); };

  auto* classify = app.add_subcommand("classify", "boundedness / compactness of W");
  classify->add_option("--alpha", c.alpha, "source space exponent")->capture_default_str();
  classify->add_option("--beta", c.beta, "target space exponent")->capture_default_str();
  classify->add_option("--psi", c.psi, "weight expression")->capture_default_str();
  classify->add_option("--phi", c.phi, "self-map expression")->capture_default_str();
  classify->add_option("--M", c.M, "tail depth")->capture_default_str();
  classify->add_option("--tol-bounded", c.tol_bounded, "max shell growth ratio")
      ->capture_default_str();
  classify->add_option("--tol-compact", c.tol_compact, "max final tail sup relative to the overall sup")
      ->capture_default_str();
  classify->add_flag("--points", c.points, "include per-point q values");
  grid_opt(classify);
  out_opt(classify);

  auto* norm = app.add_subcommand("norm", "Bloch-type norm of f");
  norm->add_option("--alpha", c.alpha)->capture_default_str();
  norm->add_option("--f", c.f, "function expression")->capture_default_str();
  grid_opt(norm);
  out_opt(norm);

  auto* pair = app.add_subcommand("pair", "duality pairing <f, p>_alpha");
  pair->add_option("--alpha", c.alpha)->capture_default_str();
  pair->add_option("--f", c.f, "function expression")->capture_default_str();
  pair->add_option("--poly", c.poly, "comma-separated coefficients a_0,a_1,...")
      ->capture_default_str();
  out_opt(pair);

  auto* testfn = app.add_subcommand("testfn", "test-function identities");
  testfn->add_option("--family", c.family, "f, g or h")->capture_default_str();
  testfn->add_option("--alpha", c.alpha)->capture_default_str();
  testfn->add_option("--w", c.w, "peak point, complex")->capture_default_str();
  testfn->add_flag("--as-printed", c.as_printed, "use the uncorrected g formula");
  testfn->add_option("--tol", c.tol, "little-Bloch tolerance")->capture_default_str();
  grid_opt(testfn);
  out_opt(testfn);

  auto* verify = app.add_subcommand("verify", "run invariant suites");
  verify->add_option("--suite", c.suites, "suite name (repeatable) or all");
  auto* verify_alpha = verify->add_option("--alpha", c.alpha, "override the alpha sweep");
  verify->add_option("--d", c.d, "override the dimension sweep");
  verify->add_option("--seed", c.seed)->capture_default_str();
  grid_opt(verify);
  out_opt(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }
  c.alpha_set = verify_alpha->count() > 0;

  const std::string command = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    if (command == "classify") outcome = cmd_classify(c);
    else if (command == "norm") outcome = cmd_norm(c);
    else if (command == "pair") outcome = cmd_pair(c);
    else if (command == "testfn") outcome = cmd_testfn(c);
    else outcome = cmd_verify(c);
  } catch (const wco::ParseError& e) {
    outcome = {error_json("parse", e.what()), kParse};
  } catch (const wco::Error& e) {
    outcome = {error_json("validation", e.what()), kValidation};
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  Json report{{"command", command},
              {"config", config_json(command, c)},
              {"result", std::move(outcome.result)},
              {"exit_code", outcome.exit},
              {"version", kVersion},
              {"wall_time_s", wall}};
  if (outcome.exit == kParse || outcome.exit == kValidation) {
    std::cerr << "error: " << report["result"]["message"].get<std::string>() << '\n';
  }
  const int io = emit(wco::report::dump(report), c.out);
  return io != kOk ? io : outcome.exit;
}
