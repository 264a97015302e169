#pragma once

// Smooth scalar expressions in real variables x1..xm: parsing, printing,
// symbolic partial derivatives, and evaluation over any arithmetic that
// supplies the primitive operations (reals, algebra elements).

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "atorus/errors.hpp"

namespace atorus {

class Expr {
 public:
  enum class Kind { Constant, Var, Add, Sub, Mul, Div, IntPow, Sin, Cos, Exp, Log };

  Expr() : Expr(constant(0.0)) {}

  Kind kind() const { return node_->kind; }
  double value() const { return node_->value; }
  /// 1-based variable index.
  int var() const { return node_->index; }
  int exponent() const { return node_->index; }
  const Expr& lhs() const { return *node_->a; }
  const Expr& rhs() const { return *node_->b; }
  const Expr& arg() const { return *node_->a; }

  bool is_constant(double v) const { return kind() == Kind::Constant && value() == v; }

  // Raw constructors build exactly the requested node.
  static Expr constant(double v);
  static Expr variable(int index);
  static Expr binary(Kind kind, Expr a, Expr b);
  static Expr int_pow(Expr base, int k);
  static Expr unary(Kind kind, Expr a);

 private:
  struct Node {
    Kind kind;
    double value = 0.0;
    int index = 0;
    std::shared_ptr<const Expr> a, b;
  };
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

/// Constant-folding constructors used by diff; they never reorder operands.
namespace fold {
Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);
Expr mul(Expr a, Expr b);
Expr div(Expr a, Expr b);
Expr pow(Expr a, int k);
Expr sin(Expr a);
Expr cos(Expr a);
Expr exp(Expr a);
Expr log(Expr a);
}  // namespace fold

/// expr   := term (('+'|'-') term)*
/// term   := factor (('*'|'/') factor)*
/// factor := '-' factor | atom ('^' uint)?
/// atom   := number | 'x'uint | func '(' expr ')' | '(' expr ')'
Expr parse(std::string_view text, int m);

/// Fully parenthesised text that parse() reads back to an equal tree.
std::string print(const Expr& e);

/// Partial derivative with respect to x_j (1-based).
Expr diff(const Expr& e, int j);

/// Largest variable index used, 0 for constant expressions.
int max_var(const Expr& e);

int node_count(const Expr& e);

double eval_real(const Expr& e, std::span<const double> point);

/// Evaluates e with arithmetic supplied by ops. Ops must provide
/// constant(double), add, sub, mul, div, pow(T, int), sin, cos, exp, log.
template <typename T, typename Ops>
T evaluate(const Expr& e, std::span<const T> point, const Ops& ops) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Constant: return ops.constant(e.value());
    case K::Var:
      if (e.var() < 1 || static_cast<std::size_t>(e.var()) > point.size()) {
        throw UnknownVariable("x" + std::to_string(e.var()) + " is not bound");
      }
      return point[e.var() - 1];
    case K::Add: return ops.add(evaluate(e.lhs(), point, ops), evaluate(e.rhs(), point, ops));
    case K::Sub: return ops.sub(evaluate(e.lhs(), point, ops), evaluate(e.rhs(), point, ops));
    case K::Mul: return ops.mul(evaluate(e.lhs(), point, ops), evaluate(e.rhs(), point, ops));
    case K::Div: return ops.div(evaluate(e.lhs(), point, ops), evaluate(e.rhs(), point, ops));
    case K::IntPow: return ops.pow(evaluate(e.lhs(), point, ops), e.exponent());
    case K::Sin: return ops.sin(evaluate(e.arg(), point, ops));
    case K::Cos: return ops.cos(evaluate(e.arg(), point, ops));
    case K::Exp: return ops.exp(evaluate(e.arg(), point, ops));
    case K::Log: return ops.log(evaluate(e.arg(), point, ops));
  }
  throw Error("corrupt expression node");
}

}  // namespace atorus
