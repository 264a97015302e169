#include "atorus/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>

#include <fmt/format.h>

namespace atorus {

using K = Expr::Kind;

Expr Expr::constant(double v) {
  auto n = std::make_shared<Node>();
  n->kind = K::Constant;
  n->value = v;
  return Expr(std::move(n));
}

Expr Expr::variable(int index) {
  auto n = std::make_shared<Node>();
  n->kind = K::Var;
  n->index = index;
  return Expr(std::move(n));
}

Expr Expr::binary(Kind kind, Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->a = std::make_shared<const Expr>(std::move(a));
  n->b = std::make_shared<const Expr>(std::move(b));
  return Expr(std::move(n));
}

Expr Expr::int_pow(Expr base, int k) {
  if (k < 0) throw Error("integer power needs a non-negative exponent");
  auto n = std::make_shared<Node>();
  n->kind = K::IntPow;
  n->index = k;
  n->a = std::make_shared<const Expr>(std::move(base));
  return Expr(std::move(n));
}

Expr Expr::unary(Kind kind, Expr a) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->a = std::make_shared<const Expr>(std::move(a));
  return Expr(std::move(n));
}

namespace fold {

namespace {
bool is_const(const Expr& e) { return e.kind() == K::Constant; }
}  // namespace

Expr add(Expr a, Expr b) {
  if (is_const(a) && is_const(b)) return Expr::constant(a.value() + b.value());
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  return Expr::binary(K::Add, std::move(a), std::move(b));
}

Expr sub(Expr a, Expr b) {
  if (is_const(a) && is_const(b)) return Expr::constant(a.value() - b.value());
  if (b.is_constant(0.0)) return a;
  return Expr::binary(K::Sub, std::move(a), std::move(b));
}

Expr mul(Expr a, Expr b) {
  if (is_const(a) && is_const(b)) return Expr::constant(a.value() * b.value());
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  return Expr::binary(K::Mul, std::move(a), std::move(b));
}

Expr div(Expr a, Expr b) {
  if (is_const(a) && is_const(b) && b.value() != 0.0) {
    return Expr::constant(a.value() / b.value());
  }
  if (b.is_constant(1.0)) return a;
  return Expr::binary(K::Div, std::move(a), std::move(b));
}

Expr pow(Expr a, int k) {
  if (k == 0) return Expr::constant(1.0);
  if (k == 1) return a;
  if (is_const(a)) return Expr::constant(std::pow(a.value(), k));
  return Expr::int_pow(std::move(a), k);
}

Expr sin(Expr a) {
  if (is_const(a)) return Expr::constant(std::sin(a.value()));
  return Expr::unary(K::Sin, std::move(a));
}

Expr cos(Expr a) {
  if (is_const(a)) return Expr::constant(std::cos(a.value()));
  return Expr::unary(K::Cos, std::move(a));
}

Expr exp(Expr a) {
  if (is_const(a)) return Expr::constant(std::exp(a.value()));
  return Expr::unary(K::Exp, std::move(a));
}

Expr log(Expr a) {
  if (is_const(a) && a.value() > 0.0) return Expr::constant(std::log(a.value()));
  return Expr::unary(K::Log, std::move(a));
}

}  // namespace fold

namespace {

class Parser {
 public:
  Parser(std::string_view text, int m) : text_(text), m_(m) {}

  Expr run() {
    Expr e = expr();
    skip();
    if (pos_ != text_.size()) throw SyntaxError("unexpected trailing input", pos_);
    return e;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) throw SyntaxError(fmt::format("expected '{}'", c), pos_);
  }

  Expr expr() {
    Expr e = term();
    while (true) {
      if (accept('+')) {
        e = Expr::binary(K::Add, std::move(e), term());
      } else if (accept('-')) {
        e = Expr::binary(K::Sub, std::move(e), term());
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = factor();
    while (true) {
      if (accept('*')) {
        e = Expr::binary(K::Mul, std::move(e), factor());
      } else if (accept('/')) {
        e = Expr::binary(K::Div, std::move(e), factor());
      } else {
        return e;
      }
    }
  }

  Expr factor() {
    if (accept('-')) {
      Expr f = factor();
      if (f.kind() == K::Constant) return Expr::constant(-f.value());
      return Expr::binary(K::Mul, Expr::constant(-1.0), std::move(f));
    }
    Expr a = atom();
    if (accept('^')) {
      skip();
      const std::size_t start = pos_;
      const long k = unsigned_int();
      if (k > std::numeric_limits<int>::max()) throw SyntaxError("exponent too large", start);
      return Expr::int_pow(std::move(a), static_cast<int>(k));
    }
    return a;
  }

  long unsigned_int() {
    const std::size_t start = pos_;
    long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > std::numeric_limits<int>::max()) v = std::numeric_limits<int>::max() + 1L;
      ++pos_;
    }
    if (pos_ == start) throw SyntaxError("expected unsigned integer", start);
    return v;
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t s = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - s;
    };
    std::size_t count = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) throw SyntaxError("malformed number", start);
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;
    }
    const std::string lexeme(text_.substr(start, pos_ - start));
    return Expr::constant(std::strtod(lexeme.c_str(), nullptr));
  }

  Expr atom() {
    skip();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "x") {
        const long idx = unsigned_int();
        if (idx < 1 || idx > m_) {
          throw UnknownVariable(fmt::format("variable x{} at offset {} is outside x1..x{}", idx,
                                            start, m_));
        }
        return Expr::variable(static_cast<int>(idx));
      }
      K kind;
      if (name == "sin") {
        kind = K::Sin;
      } else if (name == "cos") {
        kind = K::Cos;
      } else if (name == "exp") {
        kind = K::Exp;
      } else if (name == "log") {
        kind = K::Log;
      } else {
        throw SyntaxError(fmt::format("unknown identifier '{}'", name), start);
      }
      expect('(');
      Expr inner = expr();
      expect(')');
      return Expr::unary(kind, std::move(inner));
    }
    throw SyntaxError(fmt::format("unexpected character '{}'", c), pos_);
  }

  std::string_view text_;
  int m_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, int m) { return Parser(text, m).run(); }

std::string print(const Expr& e) {
  switch (e.kind()) {
    case K::Constant: {
      const std::string s = fmt::format("{:.17g}", e.value());
      return e.value() < 0 ? "(" + s + ")" : s;
    }
    case K::Var: return fmt::format("x{}", e.var());
    case K::Add: return "(" + print(e.lhs()) + " + " + print(e.rhs()) + ")";
    case K::Sub: return "(" + print(e.lhs()) + " - " + print(e.rhs()) + ")";
    case K::Mul: return "(" + print(e.lhs()) + " * " + print(e.rhs()) + ")";
    case K::Div: return "(" + print(e.lhs()) + " / " + print(e.rhs()) + ")";
    case K::IntPow: return fmt::format("({})^{}", print(e.lhs()), e.exponent());
    case K::Sin: return "sin(" + print(e.arg()) + ")";
    case K::Cos: return "cos(" + print(e.arg()) + ")";
    case K::Exp: return "exp(" + print(e.arg()) + ")";
    case K::Log: return "log(" + print(e.arg()) + ")";
  }
  return "?";
}

Expr diff(const Expr& e, int j) {
  switch (e.kind()) {
    case K::Constant: return Expr::constant(0.0);
    case K::Var: return Expr::constant(e.var() == j ? 1.0 : 0.0);
    case K::Add: return fold::add(diff(e.lhs(), j), diff(e.rhs(), j));
    case K::Sub: return fold::sub(diff(e.lhs(), j), diff(e.rhs(), j));
    case K::Mul:
      return fold::add(fold::mul(diff(e.lhs(), j), e.rhs()), fold::mul(e.lhs(), diff(e.rhs(), j)));
    case K::Div: {
      // (u/v)' = (u' v - u v') / v^2
      const Expr num = fold::sub(fold::mul(diff(e.lhs(), j), e.rhs()),
                                 fold::mul(e.lhs(), diff(e.rhs(), j)));
      if (num.is_constant(0.0)) return num;
      return fold::div(num, fold::pow(e.rhs(), 2));
    }
    case K::IntPow: {
      const int k = e.exponent();
      if (k == 0) return Expr::constant(0.0);
      return fold::mul(fold::mul(Expr::constant(k), fold::pow(e.lhs(), k - 1)), diff(e.lhs(), j));
    }
    case K::Sin: return fold::mul(fold::cos(e.arg()), diff(e.arg(), j));
    case K::Cos:
      return fold::mul(fold::mul(Expr::constant(-1.0), fold::sin(e.arg())), diff(e.arg(), j));
    case K::Exp: return fold::mul(e, diff(e.arg(), j));
    case K::Log: return fold::div(diff(e.arg(), j), e.arg());
  }
  throw Error("corrupt expression node");
}

int max_var(const Expr& e) {
  switch (e.kind()) {
    case K::Constant: return 0;
    case K::Var: return e.var();
    case K::Add:
    case K::Sub:
    case K::Mul:
    case K::Div: return std::max(max_var(e.lhs()), max_var(e.rhs()));
    default: return max_var(e.arg());
  }
}

int node_count(const Expr& e) {
  switch (e.kind()) {
    case K::Constant:
    case K::Var: return 1;
    case K::Add:
    case K::Sub:
    case K::Mul:
    case K::Div: return 1 + node_count(e.lhs()) + node_count(e.rhs());
    default: return 1 + node_count(e.arg());
  }
}

namespace {

struct RealOps {
  double constant(double v) const { return v; }
  double add(double a, double b) const { return a + b; }
  double sub(double a, double b) const { return a - b; }
  double mul(double a, double b) const { return a * b; }
  double div(double a, double b) const {
    if (b == 0.0) throw DomainError("division by zero");
    return a / b;
  }
  double pow(double a, int k) const {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= a;
    return r;
  }
  double sin(double a) const { return std::sin(a); }
  double cos(double a) const { return std::cos(a); }
  double exp(double a) const { return std::exp(a); }
  double log(double a) const {
    if (!(a > 0.0)) throw DomainError(fmt::format("log of non-positive value {:.17g}", a));
    return std::log(a);
  }
};

}  // namespace

double eval_real(const Expr& e, std::span<const double> point) {
  return evaluate<double>(e, point, RealOps{});
}

}  // namespace atorus
