#include "wco/parser.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

#include "wco/catalog.hpp"
#include "wco/errors.hpp"

namespace wco {

namespace {

const std::vector<std::string> kAtomStart = {"'z'", "number", "'('", "'-'", "function name"};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  AnalyticFn parse_all() {
    NodePtr n = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input", {"'+'", "'-'", "'*'", "'/'", "end"});
    return AnalyticFn(std::move(n));
  }

 private:
  [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected) const {
    throw ParseError(message, pos_, std::move(expected));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail("syntax error", {std::string("'") + c + "'"});
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = expr::add(lhs, term());
      } else if (accept('-')) {
        lhs = expr::sub(lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = expr::mul(lhs, factor());
      } else if (accept('/')) {
        const std::size_t at = pos_;
        NodePtr rhs = factor();
        if (expr::is_zero(rhs)) {
          pos_ = at;
          fail("division by the zero constant", {});
        }
        lhs = expr::div(lhs, rhs);
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    if (accept('-')) {
      NodePtr inner = factor();
      if (expr::is_const(inner)) return expr::constant(-inner->value);
      return expr::sub(expr::constant(0.0), inner);
    }
    NodePtr base = atom();
    if (accept('^')) {
      const std::size_t at = pos_;
      const double e = exponent();
      try {
        return expr::pow_real(base, e);
      } catch (const Error& err) {
        pos_ = at;
        fail(err.what(), {});
      }
    }
    return base;
  }

  double exponent() {
    const bool paren = accept('(');
    const bool negative = accept('-');
    skip_ws();
    if (!starts_number()) fail("expected exponent", {"signed_number"});
    const Complex v = number();
    if (v.imag() != 0.0) fail("exponent must be real", {"real number"});
    if (paren) expect(')');
    return negative ? -v.real() : v.real();
  }

  bool starts_number() const {
    return pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.');
  }

  Complex number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      // exponent only if followed by digits, so "2exp(z)" is not eaten
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        digits();
      }
    }
    const std::string token(text_.substr(start, pos_ - start));
    if (token == ".") {
      pos_ = start;
      fail("malformed number", {"number"});
    }
    const double v = std::strtod(token.c_str(), nullptr);
    if (pos_ < text_.size() && text_[pos_] == 'i') {
      ++pos_;
      return {0.0, v};
    }
    return {v, 0.0};
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input", kAtomStart);
    if (accept('(')) {
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (starts_number()) return expr::constant(number());
    if (std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      const std::size_t at = pos_;
      const std::string name = identifier();
      if (name == "z") return expr::var();
      if (name == "i") return expr::constant(Complex(0.0, 1.0));
      return call(name, at);
    }
    fail("unexpected character", kAtomStart);
  }

  struct Arg {
    NodePtr node;
    std::size_t pos;
  };

  NodePtr call(const std::string& name, std::size_t at) {
    static const std::map<std::string, std::size_t> arity = {
        {"log", 1},      {"exp", 1},      {"compose", 2},  {"blaschke", 1},
        {"dilation", 1}, {"monomial", 1}, {"lens", 1},     {"testfn_f", 2},
        {"testfn_g", 1}, {"testfn_h", 2},
    };
    const auto it = arity.find(name);
    if (it == arity.end()) {
      pos_ = at;
      fail("unknown function '" + name + "'",
           {"log", "exp", "compose", "blaschke", "dilation", "monomial", "lens", "testfn_f",
            "testfn_g", "testfn_h"});
    }
    expect('(');
    std::vector<Arg> args;
    if (peek() != ')') {
      do {
        skip_ws();
        const std::size_t p = pos_;
        args.push_back({expr(), p});
      } while (accept(','));
    }
    expect(')');
    if (args.size() != it->second) {
      throw ArityError(name + " takes " + std::to_string(it->second) + " argument(s), got " +
                           std::to_string(args.size()),
                       at, {});
    }
    // Out-of-range parameters surface as ValidationError from the catalog.
    return build(name, args);
  }

  Complex constant_arg(const Arg& a) const {
    if (!expr::is_constant_tree(a.node)) {
      throw ParseError("argument must be a constant", a.pos, {"number"});
    }
    return expr::eval_unchecked(*a.node, Complex(0.0));
  }

  double real_arg(const Arg& a) const {
    const Complex c = constant_arg(a);
    if (c.imag() != 0.0) throw ParseError("argument must be real", a.pos, {"real number"});
    return c.real();
  }

  NodePtr build(const std::string& name, const std::vector<Arg>& args) const {
    if (name == "log") return expr::log(args[0].node);
    if (name == "exp") return expr::exp(args[0].node);
    if (name == "compose") return expr::compose(args[0].node, args[1].node);
    if (name == "blaschke") return catalog::blaschke(constant_arg(args[0])).node();
    if (name == "dilation") return catalog::dilation(real_arg(args[0])).node();
    if (name == "lens") return catalog::lens(real_arg(args[0])).node();
    if (name == "monomial") {
      const double k = real_arg(args[0]);
      if (!expr::is_integral(k)) throw ParseError("monomial degree must be an integer", args[0].pos, {"integer"});
      return catalog::monomial(static_cast<int>(k)).node();
    }
    if (name == "testfn_f") {
      return catalog::test_fn_f(real_arg(args[0]), constant_arg(args[1])).node();
    }
    if (name == "testfn_h") {
      return catalog::test_fn_h(real_arg(args[0]), constant_arg(args[1])).node();
    }
    if (name == "testfn_g") return catalog::test_fn_g(constant_arg(args[0])).node();
    throw Error("unreachable primitive " + name);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_constant(Complex c) {
  const double re = c.real();
  const double im = c.imag();
  if (im == 0.0) {
    const std::string s = format_real(re);
    return std::signbit(re) ? "(" + s + ")" : s;
  }
  const std::string imag = format_real(std::abs(im)) + "i";
  if (re == 0.0 && !std::signbit(re)) return im < 0.0 ? "(-" + imag + ")" : imag;
  return "(" + format_real(re) + (std::signbit(im) ? "-" : "+") + imag + ")";
}

}  // namespace

AnalyticFn parse_expr(std::string_view text) { return Parser(text).parse_all(); }

Complex parse_complex(std::string_view text) {
  const AnalyticFn f = parse_expr(text);
  if (!f.is_constant()) throw ParseError("expected a constant", 0, {"number"});
  return expr::eval_unchecked(*f.node(), Complex(0.0));
}

std::string print_expr(const AnalyticFn& f) { return print_expr(f.node()); }

std::string print_expr(const NodePtr& n) {
  switch (n->op) {
    case Op::Var:
      return "z";
    case Op::Const:
      return format_constant(n->value);
    case Op::Add:
      return "(" + print_expr(n->lhs) + "+" + print_expr(n->rhs) + ")";
    case Op::Sub:
      return "(" + print_expr(n->lhs) + "-" + print_expr(n->rhs) + ")";
    case Op::Mul:
      return "(" + print_expr(n->lhs) + "*" + print_expr(n->rhs) + ")";
    case Op::Div:
      return "(" + print_expr(n->lhs) + "/" + print_expr(n->rhs) + ")";
    case Op::PowReal:
      return "(" + print_expr(n->lhs) + ")^(" + format_real(n->exponent) + ")";
    case Op::Log:
      return "log(" + print_expr(n->lhs) + ")";
    case Op::Exp:
      return "exp(" + print_expr(n->lhs) + ")";
    case Op::Compose:
      return "compose(" + print_expr(n->lhs) + "," + print_expr(n->rhs) + ")";
  }
  throw Error("unknown expression node");
}

}  // namespace wco
