#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

#include "atorus/expr.hpp"
#include "common.hpp"

using namespace atorus;
using atorus::testing::corpus;
using K = Expr::Kind;

namespace {

double at(const Expr& e, double a, double b) {
  const std::array<double, 2> p{a, b};
  return eval_real(e, p);
}

std::array<double, 2> sample(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> x1(0.5, 2.0), x2(-1.0, 1.0);
  return {x1(rng), x2(rng)};
}

}  // namespace

TEST(Expr, ParseTreeShape) {
  const Expr e = parse("x1^2 + sin(x2)", 2);
  ASSERT_EQ(e.kind(), K::Add);
  EXPECT_EQ(e.lhs().kind(), K::IntPow);
  EXPECT_EQ(e.lhs().exponent(), 2);
  EXPECT_EQ(e.lhs().lhs().kind(), K::Var);
  EXPECT_EQ(e.lhs().lhs().var(), 1);
  EXPECT_EQ(e.rhs().kind(), K::Sin);
  EXPECT_EQ(e.rhs().arg().var(), 2);
}

TEST(Expr, Precedence) {
  const Expr e = parse("2*x1^3", 1);
  ASSERT_EQ(e.kind(), K::Mul);
  EXPECT_EQ(e.rhs().kind(), K::IntPow);
  const Expr s = parse("x1 - x1 - x1", 1);
  ASSERT_EQ(s.kind(), K::Sub);
  EXPECT_EQ(s.lhs().kind(), K::Sub);
  EXPECT_DOUBLE_EQ(at(s, 2.0, 0.0), -2.0);
  EXPECT_DOUBLE_EQ(at(parse("8/2/2", 1), 0.0, 0.0), 2.0);
  EXPECT_DOUBLE_EQ(at(parse("-x1^2", 1), 3.0, 0.0), -9.0);
  EXPECT_DOUBLE_EQ(at(parse(" ( x1 + 1 ) * 2 ", 1), 1.0, 0.0), 4.0);
  EXPECT_DOUBLE_EQ(at(parse("1.5e1", 1), 0.0, 0.0), 15.0);
}

TEST(Expr, Errors) {
  EXPECT_THROW(parse("x3", 2), UnknownVariable);
  EXPECT_THROW(parse("x0", 2), UnknownVariable);
  try {
    parse("x1 + * 2", 1);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.offset(), 5u);
  }
  EXPECT_THROW(parse("sin x1", 1), SyntaxError);
  EXPECT_THROW(parse("x1^2.5", 1), SyntaxError);
  EXPECT_THROW(parse("(x1", 1), SyntaxError);
  EXPECT_THROW(parse("x1 x1", 1), SyntaxError);
  EXPECT_THROW(parse("tan(x1)", 1), SyntaxError);
  EXPECT_THROW(parse("", 1), SyntaxError);
}

TEST(Expr, EvalExamples) {
  EXPECT_DOUBLE_EQ(at(parse("x1^2+sin(x2)", 2), 2.0, 0.0), 4.0);
  const std::array<double, 1> neg{-1.0};
  EXPECT_THROW(eval_real(parse("log(x1)", 1), neg), DomainError);
  const std::array<double, 1> zero{0.0};
  EXPECT_THROW(eval_real(parse("1/x1", 1), zero), DomainError);
  // 40-digit reference value of exp(0.3) sin(0.7).
  EXPECT_NEAR(at(parse("exp(x1)*sin(x2)", 2), 0.3, 0.7), 0.8696029191140401586, 2e-16);
}

TEST(Expr, CommutedProductsAgree) {
  const Expr e = parse("2*x1 - x1*2", 1);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 20; ++i) EXPECT_EQ(at(e, nd(rng), 0.0), 0.0);
}

TEST(Expr, DiffExamples) {
  const Expr d = diff(parse("x1^2", 1), 1);
  EXPECT_DOUBLE_EQ(at(d, 3.0, 0.0), 6.0);
  const Expr dd = diff(diff(parse("sin(x1)", 1), 1), 1);
  for (double x : {-1.0, 0.2, 2.5}) EXPECT_NEAR(at(dd, x, 0.0), -std::sin(x), 1e-15);
  EXPECT_TRUE(diff(parse("x2", 2), 1).is_constant(0.0));
  EXPECT_TRUE(diff(parse("7", 2), 2).is_constant(0.0));
}

TEST(Expr, DiffAgreesWithFiniteDifferences) {
  std::mt19937_64 rng(7);
  const double h = 1e-5;
  for (const auto& text : corpus()) {
    const Expr e = parse(text, 2);
    for (int j = 1; j <= 2; ++j) {
      const Expr d = diff(e, j);
      for (int trial = 0; trial < 10; ++trial) {
        auto p = sample(rng);
        auto plus = p, minus = p;
        plus[j - 1] += h;
        minus[j - 1] -= h;
        const double fd = (eval_real(e, plus) - eval_real(e, minus)) / (2 * h);
        const double exact = eval_real(d, p);
        EXPECT_NEAR(exact, fd, 1e-6 * (1.0 + std::abs(exact))) << text << " d/dx" << j;
      }
    }
  }
}

TEST(Expr, MixedPartialsCommute) {
  std::mt19937_64 rng(8);
  for (const auto& text : corpus()) {
    const Expr e = parse(text, 2);
    const Expr d12 = diff(diff(e, 1), 2);
    const Expr d21 = diff(diff(e, 2), 1);
    for (int trial = 0; trial < 50; ++trial) {
      const auto p = sample(rng);
      const double a = eval_real(d12, p), b = eval_real(d21, p);
      EXPECT_NEAR(a, b, 1e-9 * (1.0 + std::abs(a))) << text;
    }
  }
}

TEST(Expr, PrintRoundTrip) {
  std::mt19937_64 rng(9);
  for (const auto& text : corpus()) {
    const Expr e = parse(text, 2);
    const Expr back = parse(print(e), 2);
    EXPECT_EQ(print(back), print(e));
    for (int trial = 0; trial < 50; ++trial) {
      const auto p = sample(rng);
      EXPECT_EQ(eval_real(back, p), eval_real(e, p)) << text;
    }
    const Expr d = diff(e, 1);
    const Expr dback = parse(print(d), 2);
    const auto p = sample(rng);
    EXPECT_EQ(eval_real(dback, p), eval_real(d, p)) << print(d);
  }
}

TEST(Expr, ConstantFolding) {
  EXPECT_TRUE(fold::mul(Expr::constant(0.0), parse("x1", 1)).is_constant(0.0));
  EXPECT_TRUE(fold::add(Expr::constant(2.0), Expr::constant(3.0)).is_constant(5.0));
  EXPECT_EQ(fold::mul(Expr::constant(1.0), parse("x1", 1)).kind(), K::Var);
  EXPECT_TRUE(fold::pow(parse("x1", 1), 0).is_constant(1.0));
  EXPECT_EQ(max_var(parse("x1 + sin(x3)", 3)), 3);
  EXPECT_EQ(node_count(parse("x1 + 1", 1)), 3);
}
