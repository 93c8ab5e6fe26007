#include "wco/report.hpp"

#include <cmath>
#include <cstdio>

namespace wco::report {

namespace {

std::string number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write(const Json& j, std::string& out, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad =
      indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        write(it.value(), out, indent, depth + 1);
      }
      out += nl;
      out += close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) {
          out += ",";
          out += nl;
        }
        out += pad;
        write(j[i], out, indent, depth + 1);
      }
      out += nl;
      out += close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += number(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

Json sups(double q1, double q2, double q3) {
  return Json{{"sup_q1", q1}, {"sup_q2", q2}, {"sup_q3", q3}};
}

}  // namespace

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const QReport& q, bool include_points) {
  Json j = sups(q.sup_q1, q.sup_q2, q.sup_q3);
  Json shells = Json::array();
  for (const auto& s : q.shells) {
    shells.push_back(Json{{"k", s.k},
                          {"radius", s.radius},
                          {"sup_q1", s.sup_q1},
                          {"sup_q2", s.sup_q2},
                          {"sup_q3", s.sup_q3}});
  }
  Json tail = Json::array();
  for (const auto& t : q.tail) {
    tail.push_back(Json{{"m", t.m},
                        {"delta", t.delta},
                        {"sup_q1", t.sup_q1},
                        {"sup_q2", t.sup_q2},
                        {"sup_q3", t.sup_q3},
                        {"vacuous", t.vacuous}});
  }
  j["shells"] = std::move(shells);
  j["tail"] = std::move(tail);
  if (include_points) {
    Json pts = Json::array();
    for (const auto& p : q.points) {
      pts.push_back(Json{{"z", to_json(p.z)},
                         {"phi_modulus", p.phi_modulus},
                         {"q1", p.q1},
                         {"q2", p.q2},
                         {"q3", p.q3}});
    }
    j["points"] = std::move(pts);
  }
  return j;
}

Json to_json(const Classification& c, bool include_points) {
  Json quantities = Json::array();
  for (const auto& q : c.quantities) {
    quantities.push_back(Json{{"name", q.name},
                              {"sup", q.sup},
                              {"growth_ratio", q.growth_ratio},
                              {"final_tail_sup", q.final_tail_sup},
                              {"bounded", q.bounded},
                              {"vanishing", q.vanishing},
                              {"jitter", q.jitter}});
  }
  return Json{{"alpha", c.alpha},
              {"beta", c.beta},
              {"alpha_case", to_string(c.alpha_case)},
              {"bounded", to_string(c.bounded_verdict)},
              {"compact", to_string(c.compact_verdict)},
              {"bounded_estimate", c.bounded},
              {"compact_estimate", c.compact},
              {"tolerances",
               Json{{"tol_bounded", c.tolerances.tol_bounded},
                    {"tol_compact", c.tolerances.tol_compact},
                    {"tail_depth", c.tolerances.tail_depth}}},
              {"quantities", std::move(quantities)},
              {"evidence", to_json(c.evidence, include_points)}};
}

Json to_json(const PairingResult& p) {
  return Json{{"value", to_json(p.value)},
              {"alpha", p.alpha},
              {"truncation_degree", p.truncation_degree},
              {"remainder", p.remainder},
              {"precision_warning", p.precision_warning}};
}

Json to_json(const WeakNullReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"n", row.n},
                        {"w", row.w},
                        {"max_abs_pairing", row.max_abs_pairing},
                        {"max_coeff", row.max_coeff}});
  }
  return Json{{"alpha", r.alpha},
              {"tol", r.tol},
              {"coeff_degree", r.coeff_degree},
              {"rows", std::move(rows)},
              {"certified", to_string(r.certified)}};
}

Json to_json(const IdentityCheck& c) {
  return Json{{"identity", c.identity},
              {"max_abs_deviation", c.max_abs_deviation},
              {"samples", c.samples},
              {"pass", c.pass}};
}

Json to_json(const LowerBoundRow& row) {
  return Json{{"z", to_json(row.z)},
              {"phi_z", to_json(row.phi_z)},
              {"lhs", row.lhs},
              {"rhs", row.rhs},
              {"intermediate", row.intermediate},
              {"chain", row.chain},
              {"pass", row.pass()}};
}

Json to_json(const NormTransferReport& r) {
  return Json{{"identity", to_json(r.identity)},
              {"functionals", r.functionals},
              {"weak_norm_source", r.weak_norm_source},
              {"weak_norm_image", r.weak_norm_image},
              {"ratio", r.ratio}};
}

std::string dump(const Json& j, int indent) {
  std::string out;
  write(j, out, indent, 0);
  return out;
}

}  // namespace wco::report
