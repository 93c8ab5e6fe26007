#pragma once

#include <complex>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

namespace wco {

using Complex = std::complex<double>;

enum class Op { Var, Const, Add, Sub, Mul, Div, PowReal, Log, Exp, Compose };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable expression-tree node.
///
/// `lhs`/`rhs` hold the operands of binary ops; unary ops (Log, Exp,
/// PowReal) use `lhs` only. Compose stores the outer function in `lhs` and
/// the inner one in `rhs`; Var inside `lhs` then refers to the inner value.
struct Node {
  Op op = Op::Var;
  Complex value{};        // Const
  double exponent = 0.0;  // PowReal
  NodePtr lhs;
  NodePtr rhs;
};

namespace expr {

// Smart constructors fold trivial constants (0 + x, 1 * x, ...).
NodePtr var();
NodePtr constant(Complex c);
NodePtr add(NodePtr a, NodePtr b);
NodePtr sub(NodePtr a, NodePtr b);
NodePtr mul(NodePtr a, NodePtr b);
NodePtr div(NodePtr a, NodePtr b);
NodePtr pow_real(NodePtr base, double exponent);
NodePtr log(NodePtr a);
NodePtr exp(NodePtr a);
NodePtr compose(NodePtr outer, NodePtr inner);

bool is_const(const NodePtr& n);
bool is_zero(const NodePtr& n);
/// True if the tree contains no Var outside a Compose's outer part.
bool is_constant_tree(const NodePtr& n);
bool is_integral(double x);

/// Evaluates without the |z| < 1 check (used for compose and oracles).
Complex eval_unchecked(const Node& n, Complex z);
NodePtr derivative(const NodePtr& n);
std::size_t node_count(const NodePtr& n);

}  // namespace expr

/// An analytic function on the unit disc backed by an expression tree.
///
/// Copies share the tree and the lazily built derivative, which is built
/// under std::call_once so a shared AnalyticFn can be differentiated from
/// several threads.
class AnalyticFn {
 public:
  AnalyticFn();
  explicit AnalyticFn(NodePtr node);

  static AnalyticFn identity();
  static AnalyticFn constant(Complex c);

  const NodePtr& node() const noexcept { return state_->node; }

  /// Throws DomainError if |z| >= 1, BranchError on a branch cut.
  Complex operator()(Complex z) const;
  Complex eval(Complex z) const { return (*this)(z); }

  /// Evaluates at every point; same error contract as operator().
  std::vector<Complex> eval_batch(std::span<const Complex> zs) const;

  const AnalyticFn& derivative() const;

  bool is_constant() const;

 private:
  struct State {
    explicit State(NodePtr n) : node(std::move(n)) {}
    NodePtr node;
    mutable std::once_flag once;
    mutable std::unique_ptr<AnalyticFn> derivative;
  };
  std::shared_ptr<State> state_;
};

AnalyticFn deriv(const AnalyticFn& f);
Complex eval(const AnalyticFn& f, Complex z);

AnalyticFn operator+(const AnalyticFn& a, const AnalyticFn& b);
AnalyticFn operator-(const AnalyticFn& a, const AnalyticFn& b);
AnalyticFn operator*(const AnalyticFn& a, const AnalyticFn& b);
AnalyticFn operator/(const AnalyticFn& a, const AnalyticFn& b);
AnalyticFn operator*(Complex c, const AnalyticFn& f);
AnalyticFn pow(const AnalyticFn& base, double exponent);
AnalyticFn log(const AnalyticFn& f);
AnalyticFn exp(const AnalyticFn& f);
/// outer ∘ inner
AnalyticFn compose(const AnalyticFn& outer, const AnalyticFn& inner);

/// 1 - |z|^2 computed as (1 - |z|)(1 + |z|).
inline double one_minus_abs2(Complex z) {
  const double r = std::abs(z);
  return (1.0 - r) * (1.0 + r);
}

}  // namespace wco
