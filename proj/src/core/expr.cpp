#include "wco/expr.hpp"

#include <cmath>
#include <unordered_map>

#include "wco/errors.hpp"
#include "wco/simd/kernels.hpp"

namespace wco {

namespace expr {

namespace {

std::shared_ptr<Node> make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

bool is_one(const NodePtr& n) { return is_const(n) && n->value == Complex(1.0, 0.0); }

// Same operation order as the SIMD kernels so pointwise and batch
// evaluation agree bit for bit.
Complex cmul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

Complex cdiv(Complex a, Complex b) {
  const double den = b.real() * b.real() + b.imag() * b.imag();
  if (den == 0.0) throw DomainError("division by zero");
  return {(a.real() * b.real() + a.imag() * b.imag()) / den,
          (a.imag() * b.real() - a.real() * b.imag()) / den};
}

void check_branch(Complex w, const char* what) {
  if (w.imag() == 0.0 && w.real() <= 0.0) {
    throw BranchError(std::string(what) + " argument on the principal-branch cut");
  }
}

Complex int_pow(Complex base, long long k) {
  const bool invert = k < 0;
  unsigned long long e = invert ? static_cast<unsigned long long>(-k)
                                : static_cast<unsigned long long>(k);
  Complex result(1.0, 0.0);
  Complex b = base;
  while (e != 0) {
    if (e & 1ULL) result = cmul(result, b);
    e >>= 1ULL;
    if (e != 0) b = cmul(b, b);
  }
  return invert ? cdiv(Complex(1.0, 0.0), result) : result;
}

Complex pow_value(Complex base, double exponent) {
  if (is_integral(exponent)) return int_pow(base, static_cast<long long>(exponent));
  check_branch(base, "power");
  return std::exp(exponent * std::log(base));
}

Complex log_value(Complex a) {
  check_branch(a, "log");
  return std::log(a);
}

// Batch evaluator with per-context memoisation: derivative trees share
// subtrees, and each shared node is evaluated once per batch.
class BatchEvaluator {
 public:
  explicit BatchEvaluator(const simd::ComplexArray& var) : var_(var) {}

  const simd::ComplexArray& eval(const Node& n) {
    if (n.op == Op::Var) return var_;
    auto it = memo_.find(&n);
    if (it != memo_.end()) return it->second;
    simd::ComplexArray out = compute(n);
    return memo_.emplace(&n, std::move(out)).first->second;
  }

 private:
  simd::ComplexArray compute(const Node& n) {
    const std::size_t size = var_.size();
    switch (n.op) {
      case Op::Var:
        return var_;
      case Op::Const:
        return simd::ComplexArray(size, n.value);
      case Op::Add:
      case Op::Sub:
      case Op::Mul:
      case Op::Div: {
        const auto& a = eval(*n.lhs);
        const auto& b = eval(*n.rhs);
        simd::ComplexArray out(size);
        if (n.op == Op::Add) simd::add(a, b, out);
        if (n.op == Op::Sub) simd::sub(a, b, out);
        if (n.op == Op::Mul) simd::mul(a, b, out);
        if (n.op == Op::Div) {
          for (std::size_t i = 0; i < size; ++i) {
            if (b.re[i] == 0.0 && b.im[i] == 0.0) throw DomainError("division by zero");
          }
          simd::div(a, b, out);
        }
        return out;
      }
      case Op::PowReal:
        return map_unary(n, [e = n.exponent](Complex v) { return pow_value(v, e); });
      case Op::Log:
        return map_unary(n, log_value);
      case Op::Exp:
        return map_unary(n, [](Complex v) { return std::exp(v); });
      case Op::Compose: {
        const auto& inner = eval(*n.rhs);
        BatchEvaluator outer(inner);
        return outer.eval(*n.lhs);
      }
    }
    throw Error("unknown expression node");
  }

  template <class F>
  simd::ComplexArray map_unary(const Node& n, F&& f) {
    const auto& a = eval(*n.lhs);
    simd::ComplexArray out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.set(i, f(a[i]));
    return out;
  }

  const simd::ComplexArray& var_;
  std::unordered_map<const Node*, simd::ComplexArray> memo_;
};

void check_finite(Complex v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw DomainError("non-finite function value");
  }
}

void check_in_disc(Complex z) {
  if (!(std::abs(z) < 1.0)) throw DomainError("evaluation point outside the open unit disc");
}

}  // namespace

bool is_integral(double x) { return std::isfinite(x) && std::floor(x) == x && std::abs(x) < 1e9; }

bool is_const(const NodePtr& n) { return n && n->op == Op::Const; }

bool is_zero(const NodePtr& n) { return is_const(n) && n->value == Complex(0.0, 0.0); }

bool is_constant_tree(const NodePtr& n) {
  switch (n->op) {
    case Op::Var:
      return false;
    case Op::Const:
      return true;
    case Op::Compose:
      return is_constant_tree(n->lhs) || is_constant_tree(n->rhs);
    default:
      return is_constant_tree(n->lhs) && (!n->rhs || is_constant_tree(n->rhs));
  }
}

NodePtr var() {
  static const NodePtr v = make(Op::Var);
  return v;
}

NodePtr constant(Complex c) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = c;
  return n;
}

NodePtr add(NodePtr a, NodePtr b) {
  if (is_zero(a)) return b;
  if (is_zero(b)) return a;
  if (is_const(a) && is_const(b)) return constant(a->value + b->value);
  return make(Op::Add, std::move(a), std::move(b));
}

NodePtr sub(NodePtr a, NodePtr b) {
  if (is_zero(b)) return a;
  if (is_const(a) && is_const(b)) return constant(a->value - b->value);
  return make(Op::Sub, std::move(a), std::move(b));
}

NodePtr mul(NodePtr a, NodePtr b) {
  if (is_zero(a) || is_zero(b)) return constant(0.0);
  if (is_one(a)) return b;
  if (is_one(b)) return a;
  if (is_const(a) && is_const(b)) return constant(cmul(a->value, b->value));
  return make(Op::Mul, std::move(a), std::move(b));
}

NodePtr div(NodePtr a, NodePtr b) {
  if (is_zero(b)) throw DomainError("division by the zero constant");
  if (is_zero(a)) return constant(0.0);
  if (is_one(b)) return a;
  if (is_const(a) && is_const(b)) return constant(cdiv(a->value, b->value));
  return make(Op::Div, std::move(a), std::move(b));
}

NodePtr pow_real(NodePtr base, double exponent) {
  if (!std::isfinite(exponent)) throw ValidationError("non-finite exponent");
  if (exponent == 0.0) return constant(1.0);
  if (exponent == 1.0) return base;
  if (is_const(base)) return constant(pow_value(base->value, exponent));
  auto n = make(Op::PowReal, std::move(base));
  n->exponent = exponent;
  return n;
}

NodePtr log(NodePtr a) {
  if (is_const(a)) return constant(log_value(a->value));
  return make(Op::Log, std::move(a));
}

NodePtr exp(NodePtr a) {
  if (is_const(a)) return constant(std::exp(a->value));
  return make(Op::Exp, std::move(a));
}

NodePtr compose(NodePtr outer, NodePtr inner) {
  if (is_const(outer)) return outer;
  if (outer->op == Op::Var) return inner;
  if (inner->op == Op::Var) return outer;
  return make(Op::Compose, std::move(outer), std::move(inner));
}

Complex eval_unchecked(const Node& n, Complex z) {
  switch (n.op) {
    case Op::Var:
      return z;
    case Op::Const:
      return n.value;
    case Op::Add:
      return eval_unchecked(*n.lhs, z) + eval_unchecked(*n.rhs, z);
    case Op::Sub:
      return eval_unchecked(*n.lhs, z) - eval_unchecked(*n.rhs, z);
    case Op::Mul:
      return cmul(eval_unchecked(*n.lhs, z), eval_unchecked(*n.rhs, z));
    case Op::Div:
      return cdiv(eval_unchecked(*n.lhs, z), eval_unchecked(*n.rhs, z));
    case Op::PowReal:
      return pow_value(eval_unchecked(*n.lhs, z), n.exponent);
    case Op::Log:
      return log_value(eval_unchecked(*n.lhs, z));
    case Op::Exp:
      return std::exp(eval_unchecked(*n.lhs, z));
    case Op::Compose:
      return eval_unchecked(*n.lhs, eval_unchecked(*n.rhs, z));
  }
  throw Error("unknown expression node");
}

NodePtr derivative(const NodePtr& n) {
  switch (n->op) {
    case Op::Var:
      return constant(1.0);
    case Op::Const:
      return constant(0.0);
    case Op::Add:
      return add(derivative(n->lhs), derivative(n->rhs));
    case Op::Sub:
      return sub(derivative(n->lhs), derivative(n->rhs));
    case Op::Mul:
      return add(mul(derivative(n->lhs), n->rhs), mul(n->lhs, derivative(n->rhs)));
    case Op::Div: {
      auto num = sub(mul(derivative(n->lhs), n->rhs), mul(n->lhs, derivative(n->rhs)));
      if (is_zero(num)) return constant(0.0);
      return div(num, pow_real(n->rhs, 2.0));
    }
    case Op::PowReal: {
      auto db = derivative(n->lhs);
      if (is_zero(db)) return constant(0.0);
      return mul(mul(constant(n->exponent), pow_real(n->lhs, n->exponent - 1.0)), db);
    }
    case Op::Log: {
      auto da = derivative(n->lhs);
      if (is_zero(da)) return constant(0.0);
      return div(da, n->lhs);
    }
    case Op::Exp:
      return mul(n, derivative(n->lhs));
    case Op::Compose:
      return mul(compose(derivative(n->lhs), n->rhs), derivative(n->rhs));
  }
  throw Error("unknown expression node");
}

std::size_t node_count(const NodePtr& n) {
  if (!n) return 0;
  return 1 + node_count(n->lhs) + node_count(n->rhs);
}

}  // namespace expr

AnalyticFn::AnalyticFn() : AnalyticFn(expr::constant(0.0)) {}

AnalyticFn::AnalyticFn(NodePtr node) {
  if (!node) throw ValidationError("null expression");
  state_ = std::make_shared<State>(std::move(node));
}

AnalyticFn AnalyticFn::identity() { return AnalyticFn(expr::var()); }

AnalyticFn AnalyticFn::constant(Complex c) { return AnalyticFn(expr::constant(c)); }

Complex AnalyticFn::operator()(Complex z) const {
  expr::check_in_disc(z);
  const Complex v = expr::eval_unchecked(*state_->node, z);
  expr::check_finite(v);
  return v;
}

std::vector<Complex> AnalyticFn::eval_batch(std::span<const Complex> zs) const {
  for (const Complex& z : zs) expr::check_in_disc(z);
  const auto var = simd::ComplexArray::from(zs);
  expr::BatchEvaluator evaluator(var);
  const auto& out = evaluator.eval(*state_->node);
  std::vector<Complex> values = out.to_vector();
  for (const Complex& v : values) expr::check_finite(v);
  return values;
}

const AnalyticFn& AnalyticFn::derivative() const {
  std::call_once(state_->once, [this] {
    state_->derivative = std::make_unique<AnalyticFn>(expr::derivative(state_->node));
  });
  return *state_->derivative;
}

bool AnalyticFn::is_constant() const { return expr::is_constant_tree(state_->node); }

AnalyticFn deriv(const AnalyticFn& f) { return f.derivative(); }

Complex eval(const AnalyticFn& f, Complex z) { return f(z); }

AnalyticFn operator+(const AnalyticFn& a, const AnalyticFn& b) {
  return AnalyticFn(expr::add(a.node(), b.node()));
}
AnalyticFn operator-(const AnalyticFn& a, const AnalyticFn& b) {
  return AnalyticFn(expr::sub(a.node(), b.node()));
}
AnalyticFn operator*(const AnalyticFn& a, const AnalyticFn& b) {
  return AnalyticFn(expr::mul(a.node(), b.node()));
}
AnalyticFn operator/(const AnalyticFn& a, const AnalyticFn& b) {
  return AnalyticFn(expr::div(a.node(), b.node()));
}
AnalyticFn operator*(Complex c, const AnalyticFn& f) {
  return AnalyticFn(expr::mul(expr::constant(c), f.node()));
}
AnalyticFn pow(const AnalyticFn& base, double exponent) {
  return AnalyticFn(expr::pow_real(base.node(), exponent));
}
AnalyticFn log(const AnalyticFn& f) { return AnalyticFn(expr::log(f.node())); }
AnalyticFn exp(const AnalyticFn& f) { return AnalyticFn(expr::exp(f.node())); }
AnalyticFn compose(const AnalyticFn& outer, const AnalyticFn& inner) {
  return AnalyticFn(expr::compose(outer.node(), inner.node()));
}

}  // namespace wco
